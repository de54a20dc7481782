//! Rules and programs, the syntactic projection operator and the
//! A-separation test. Text I/O lives in [`parser`] and [`printer`].

mod parser;
mod printer;

pub use parser::{parse_program, parse_program_with, ParseOptions};
pub use printer::format_program;

use std::collections::{BTreeSet, HashSet};

use crate::atoms::{AtomLimit, AtomSet, Interpretation, Symbols};
use crate::error::{Error, Result};

/// An extended rule `H ← B⁺, not B⁻, not not B⁻⁻`.
///
/// An empty head denotes a constraint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: AtomSet,
    pub pos: AtomSet,
    pub neg: AtomSet,
    pub dneg: AtomSet,
}

impl Rule {
    pub fn new(head: AtomSet, pos: AtomSet, neg: AtomSet, dneg: AtomSet) -> Self {
        Rule {
            head,
            pos,
            neg,
            dneg,
        }
    }

    pub fn fact(head: AtomSet) -> Self {
        Rule {
            head,
            ..Rule::default()
        }
    }

    pub fn constraint(pos: AtomSet, neg: AtomSet, dneg: AtomSet) -> Self {
        Rule::new(AtomSet::EMPTY, pos, neg, dneg)
    }

    pub fn atoms(&self) -> AtomSet {
        self.head | self.pos | self.neg | self.dneg
    }

    pub fn body_atoms(&self) -> AtomSet {
        self.pos | self.neg | self.dneg
    }

    pub fn body_len(&self) -> usize {
        self.pos.len() + self.neg.len() + self.dneg.len()
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    /// `I ⊨ r`: `(H ∪ B⁻) ∩ I ≠ ∅` or `B⁺ ∪ B⁻⁻ ⊄ I`.
    #[inline]
    pub fn satisfied_by(&self, i: Interpretation) -> bool {
        (self.head | self.neg).intersects(i) || !(self.pos | self.dneg).is_subset(i)
    }

    /// Whether the rule survives in the reduct with respect to `i`.
    #[inline]
    pub fn survives_reduct(&self, i: Interpretation) -> bool {
        self.neg.is_disjoint(i) && self.dneg.is_subset(i)
    }

    /// `X ⊨ {r}^Y`.
    #[inline]
    pub fn reduct_satisfied(&self, x: Interpretation, y: Interpretation) -> bool {
        !self.survives_reduct(y) || self.head.intersects(x) || !self.pos.is_subset(x)
    }

    /// The positive rule `H ← B⁺` left in the reduct.
    pub fn positive_part(&self) -> Rule {
        Rule::new(self.head, self.pos, AtomSet::EMPTY, AtomSet::EMPTY)
    }
}

/// A finite set of extended rules over a universe of atoms.
///
/// The universe is a subset of the symbol table and may strictly contain
/// the atoms occurring in rules. Rules are kept in first-occurrence order
/// with duplicates removed.
#[derive(Clone, Debug)]
pub struct Program {
    symbols: Symbols,
    universe: AtomSet,
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(symbols: Symbols, universe: AtomSet, rules: Vec<Rule>) -> Result<Self> {
        if !universe.is_subset(symbols.all()) {
            return Err(Error::NotSubset {
                what: "universe".into(),
                of: "symbol table".into(),
            });
        }
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(rules.len());
        for r in rules {
            if !r.atoms().is_subset(universe) {
                return Err(Error::NotSubset {
                    what: format!("rule atoms {}", symbols.show(r.atoms())),
                    of: format!("universe {}", symbols.show(universe)),
                });
            }
            if seen.insert(r) {
                kept.push(r);
            }
        }
        Ok(Program {
            symbols,
            universe,
            rules: kept,
        })
    }

    /// The empty program over `universe`.
    pub fn empty(symbols: Symbols, universe: AtomSet) -> Result<Self> {
        Program::new(symbols, universe, Vec::new())
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn universe(&self) -> AtomSet {
        self.universe
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn occurring_atoms(&self) -> AtomSet {
        self.rules
            .iter()
            .fold(AtomSet::EMPTY, |acc, r| acc | r.atoms())
    }

    pub fn check_limit(&self, limit: AtomLimit) -> Result<()> {
        if self.universe.len() > limit.get() {
            return Err(Error::UniverseTooLarge {
                size: self.universe.len(),
                limit: limit.get(),
            });
        }
        Ok(())
    }

    /// Same rules over a larger (or equal) universe.
    pub fn with_universe(&self, universe: AtomSet) -> Result<Program> {
        Program::new(self.symbols.clone(), universe, self.rules.clone())
    }

    /// Re-expresses the program over another symbol table, matching by name.
    pub fn rebase(&self, target: &Symbols) -> Result<Program> {
        if self.symbols.same(target) {
            return Ok(Program {
                symbols: target.clone(),
                ..self.clone()
            });
        }
        let tr = |s: AtomSet| self.symbols.translate(s, target);
        let rules = self
            .rules
            .iter()
            .map(|r| Ok(Rule::new(tr(r.head)?, tr(r.pos)?, tr(r.neg)?, tr(r.dneg)?)))
            .collect::<Result<Vec<_>>>()?;
        Program::new(target.clone(), tr(self.universe)?, rules)
    }

    /// `self ∪ other` over the union of both universes. Both programs must
    /// share a symbol table.
    pub fn union(&self, other: &Program) -> Result<Program> {
        let other = other.rebase(&self.symbols)?;
        let mut rules = self.rules.clone();
        rules.extend_from_slice(&other.rules);
        Program::new(self.symbols.clone(), self.universe | other.universe, rules)
    }

    /// Appends a rule (ignored if already present).
    pub fn push(&mut self, rule: Rule) -> Result<()> {
        if !rule.atoms().is_subset(self.universe) {
            return Err(Error::NotSubset {
                what: format!("rule atoms {}", self.symbols.show(rule.atoms())),
                of: format!("universe {}", self.symbols.show(self.universe)),
            });
        }
        if !self.rules.contains(&rule) {
            self.rules.push(rule);
        }
        Ok(())
    }

    /// `I ⊨ P`.
    pub fn is_model(&self, i: Interpretation) -> bool {
        self.rules.iter().all(|r| r.satisfied_by(i))
    }

    /// The GL-reduct `P^I` as a positive program.
    pub fn reduct(&self, i: Interpretation) -> Program {
        let rules = self
            .rules
            .iter()
            .filter(|r| r.survives_reduct(i))
            .map(Rule::positive_part)
            .collect::<Vec<_>>();
        Program::new(self.symbols.clone(), self.universe, rules).expect("reduct keeps atoms")
    }

    /// `X ⊨ P^Y` without materializing the reduct.
    pub fn reduct_satisfied(&self, x: Interpretation, y: Interpretation) -> bool {
        self.rules.iter().all(|r| r.reduct_satisfied(x, y))
    }

    /// Structural equality up to rule order and symbol-table order.
    pub fn same_as(&self, other: &Program) -> bool {
        let names = |p: &Program, s: AtomSet| p.symbols.sorted_names(s);
        let canon = |p: &Program| {
            p.rules
                .iter()
                .map(|r| (names(p, r.head), names(p, r.pos), names(p, r.neg), names(p, r.dneg)))
                .collect::<BTreeSet<_>>()
        };
        names(self, self.universe) == names(other, other.universe) && canon(self) == canon(other)
    }

    /// The syntactic projection `P_{|Ā}`.
    ///
    /// Rules whose head or negative body meets `a` are dropped; the others
    /// lose the atoms of `a` from their positive and double-negated bodies.
    /// The result is over `universe \ a`.
    pub fn project(&self, a: AtomSet) -> Program {
        let rules = self
            .rules
            .iter()
            .filter(|r| r.head.is_disjoint(a) && r.neg.is_disjoint(a))
            .map(|r| Rule::new(r.head, r.pos - a, r.neg, r.dneg - a))
            .collect();
        Program::new(self.symbols.clone(), self.universe - a, rules)
            .expect("projection stays inside the universe")
    }

    /// Whether every rule uses atoms only from `a` or only from its
    /// complement.
    pub fn is_a_separated(&self, a: AtomSet) -> bool {
        self.rules.iter().all(|r| {
            let atoms = r.atoms();
            atoms.is_subset(a) || atoms.is_disjoint(a)
        })
    }
}

impl PartialEq for Program {
    fn eq(&self, other: &Program) -> bool {
        self.same_as(other)
    }
}

/// Free-function form of [`Program::project`].
pub fn project(p: &Program, a: AtomSet) -> Program {
    p.project(a)
}

/// Free-function form of [`Program::is_a_separated`].
pub fn is_a_separated(r: &Program, a: AtomSet) -> bool {
    r.is_a_separated(a)
}
