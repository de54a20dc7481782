use std::collections::HashSet;

use crate::atoms::{AtomSet, Symbols};
use crate::error::{Error, Result};
use crate::syntax::{Program, Rule};

/// Limits for the bounded enumeration of context programs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContextBounds {
    pub max_rules: usize,
    pub max_body_literals: usize,
    pub allow_double_negation: bool,
    /// Also generate the fact, guard and implication-chain programs that
    /// discriminate non-equivalent programs.
    pub include_proof_witness_family: bool,
    /// Refuse to enumerate more programs than this.
    pub max_contexts: usize,
}

impl Default for ContextBounds {
    fn default() -> Self {
        ContextBounds {
            max_rules: 2,
            max_body_literals: 2,
            allow_double_negation: true,
            include_proof_witness_family: true,
            max_contexts: 2_000_000,
        }
    }
}

/// Context programs over `B` plus two auxiliary atoms.
///
/// `f` is a fresh atom that stays in the kept vocabulary; `eps` is a fresh
/// atom that is removed together with `A`.
#[derive(Clone, Debug)]
pub struct ContextFamily {
    pub symbols: Symbols,
    pub f: usize,
    pub eps: usize,
    pub programs: Vec<Program>,
}

impl ContextFamily {
    pub fn aux(&self) -> AtomSet {
        AtomSet::singleton(self.f).with(self.eps)
    }

    pub fn len(&self) -> usize {
        self.programs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.programs.is_empty()
    }
}

/// Extends a symbol table with the two auxiliary atoms.
pub(crate) fn with_aux(symbols: &Symbols) -> Result<(Symbols, usize, usize)> {
    let f = symbols.fresh_name("f");
    let eps = symbols.fresh_name("eps");
    let ext = symbols.extended([f.clone(), eps.clone()])?;
    let fi = ext.index_of(&f).expect("just added");
    let ei = ext.index_of(&eps).expect("just added");
    Ok((ext, fi, ei))
}

/// Single-atom-head (or constraint) rules within one side of the split.
fn candidate_rules(side: AtomSet, bounds: &ContextBounds) -> Vec<Rule> {
    let kinds: u32 = if bounds.allow_double_negation { 3 } else { 2 };
    let mut bodies = Vec::new();
    for atoms in side.subsets() {
        if atoms.len() > bounds.max_body_literals {
            continue;
        }
        let idx: Vec<usize> = atoms.iter().collect();
        for code in 0..kinds.pow(idx.len() as u32) {
            let mut c = code;
            let (mut pos, mut neg, mut dneg) = (AtomSet::EMPTY, AtomSet::EMPTY, AtomSet::EMPTY);
            for &i in &idx {
                match c % kinds {
                    0 => pos.insert(i),
                    1 => neg.insert(i),
                    _ => dneg.insert(i),
                }
                c /= kinds;
            }
            bodies.push((pos, neg, dneg));
        }
    }
    let heads = std::iter::once(AtomSet::EMPTY).chain(side.iter().map(AtomSet::singleton));
    let mut rules = Vec::new();
    for head in heads {
        for &(pos, neg, dneg) in &bodies {
            let r = Rule::new(head, pos, neg, dneg);
            if r.is_constraint() && r.body_len() == 0 {
                continue;
            }
            if head.intersects(pos) {
                continue;
            }
            rules.push(r);
        }
    }
    rules
}

fn binomial_sum(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for i in 0..=k.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Guard rules `aux ← z, not aux` for each `z`: they act as constraints
/// against `z` without a constraint that projection could empty.
fn guards(z: AtomSet, aux: usize) -> Vec<Rule> {
    z.iter()
        .map(|i| {
            Rule::new(
                AtomSet::singleton(aux),
                AtomSet::singleton(i),
                AtomSet::singleton(aux),
                AtomSet::EMPTY,
            )
        })
        .collect()
}

fn chains(z: AtomSet) -> Vec<Rule> {
    let mut out = Vec::new();
    for c1 in z.iter() {
        for c2 in z.iter().filter(|&c2| c2 != c1) {
            out.push(Rule::new(
                AtomSet::singleton(c2),
                AtomSet::singleton(c1),
                AtomSet::EMPTY,
                AtomSet::EMPTY,
            ));
        }
    }
    out
}

/// Enumerates `A`-separated context programs over `b`.
///
/// Order: all programs of up to `max_rules` candidate rules (by size, then
/// lexicographically by candidate index), followed by the proof-witness
/// family. Duplicates are skipped. Every program is over `b` plus the
/// auxiliary atoms it uses.
pub fn enumerate_contexts(
    symbols: &Symbols,
    b: AtomSet,
    a: AtomSet,
    bounds: &ContextBounds,
) -> Result<ContextFamily> {
    if bounds.max_rules == 0 {
        return Err(Error::NotSubset {
            what: "max_rules = 0".into(),
            of: "the valid bounds (at least one rule)".into(),
        });
    }
    let (ext, f, eps) = with_aux(symbols)?;
    let (outer, inner) = (b - a, b & a);
    let mut cands = candidate_rules(outer, bounds);
    cands.extend(candidate_rules(inner, bounds));

    let family_size: u128 = if bounds.include_proof_witness_family {
        4 * 3u128.pow(b.len() as u32)
    } else {
        0
    };
    let estimated = binomial_sum(cands.len(), bounds.max_rules) + family_size;
    if estimated > bounds.max_contexts as u128 {
        return Err(Error::ContextOverflow {
            estimated,
            limit: bounds.max_contexts as u128,
        });
    }

    let mut seen: HashSet<(AtomSet, Vec<Rule>)> = HashSet::new();
    let mut programs = Vec::new();
    let mut emit = |rules: Vec<Rule>| -> Result<()> {
        let mut key = rules.clone();
        key.sort();
        key.dedup();
        let universe = key.iter().fold(b, |acc, r| acc | r.atoms());
        if seen.insert((universe, key)) {
            programs.push(Program::new(ext.clone(), universe, rules)?);
        }
        Ok(())
    };

    // Bounded part: combinations in size order.
    for k in 0..=bounds.max_rules.min(cands.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            emit(idx.iter().map(|&i| cands[i]).collect())?;
            // next combination
            let mut i = k;
            while i > 0 && idx[i - 1] == cands.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    if bounds.include_proof_witness_family {
        for y in b.subsets() {
            let kills = {
                let rest = b - y;
                let mut g = guards(rest - a, f);
                g.extend(guards(rest & a, eps));
                g
            };
            for x in y.subsets() {
                let facts: Vec<Rule> = x.iter().map(|i| Rule::fact(AtomSet::singleton(i))).collect();
                let gap = y - x;
                let mut links = chains(gap - a);
                links.extend(chains(gap & a));
                for (use_links, use_kills) in [(false, false), (true, false), (false, true), (true, true)] {
                    let mut rules = facts.clone();
                    if use_links {
                        rules.extend(links.iter().copied());
                    }
                    if use_kills {
                        rules.extend(kills.iter().copied());
                    }
                    emit(rules)?;
                }
            }
        }
    }

    Ok(ContextFamily {
        symbols: ext,
        f,
        eps,
        programs,
    })
}
