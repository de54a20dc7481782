//! Classical models, GL-reducts, answer sets and SE-models by exhaustive
//! enumeration.
//!
//! All enumerations are Y-major: candidate `there` components are visited in
//! ascending numeric order, and for each of them the `here` components in
//! ascending order. Result sets are ordered the same way.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::atoms::{AtomSet, Interpretation, Symbols};
use crate::error::Result;
use crate::syntax::{Program, Rule};

/// An SE-interpretation `⟨X, Y⟩` with `X ⊆ Y`.
///
/// Ordered by `there` first, then `here`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SePair {
    pub there: Interpretation,
    pub here: Interpretation,
}

impl SePair {
    pub fn new(here: Interpretation, there: Interpretation) -> Self {
        debug_assert!(here.is_subset(there));
        SePair { there, here }
    }

    pub fn total(y: Interpretation) -> Self {
        SePair { there: y, here: y }
    }

    pub fn is_total(&self) -> bool {
        self.here == self.there
    }

    /// `⟨X ∖ A, Y ∖ A⟩`.
    pub fn without(&self, a: AtomSet) -> SePair {
        SePair::new(self.here - a, self.there - a)
    }

    pub fn show(&self, syms: &Symbols) -> String {
        format!("<{}, {}>", syms.show(self.here), syms.show(self.there))
    }
}

/// A set of SE-interpretations over an alphabet, optionally carrying the
/// relativizing vocabulary it was computed for.
#[derive(Clone, Debug)]
pub struct SeModelSet {
    symbols: Symbols,
    alphabet: AtomSet,
    relativizer: Option<AtomSet>,
    pairs: BTreeSet<SePair>,
}

impl SeModelSet {
    pub fn new(
        symbols: Symbols,
        alphabet: AtomSet,
        relativizer: Option<AtomSet>,
        pairs: impl IntoIterator<Item = SePair>,
    ) -> Self {
        SeModelSet {
            symbols,
            alphabet,
            relativizer,
            pairs: pairs.into_iter().collect(),
        }
    }

    /// Builds a set from named pairs, e.g. `[("b", "ab")]` where each
    /// character is a one-letter atom name. Intended for tests and examples.
    pub fn from_letters(
        symbols: &Symbols,
        alphabet: AtomSet,
        relativizer: Option<AtomSet>,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let set = |s: &str| symbols.set_of(s.chars().map(|c| c.to_string()));
        let pairs = pairs
            .iter()
            .map(|(x, y)| Ok(SePair::new(set(x)?, set(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeModelSet::new(symbols.clone(), alphabet, relativizer, pairs))
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn alphabet(&self) -> AtomSet {
        self.alphabet
    }

    pub fn relativizer(&self) -> Option<AtomSet> {
        self.relativizer
    }

    pub fn pairs(&self) -> &BTreeSet<SePair> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: &SePair) -> bool {
        self.pairs.contains(pair)
    }

    pub fn contains_total(&self, y: Interpretation) -> bool {
        self.pairs.contains(&SePair::total(y))
    }

    pub fn totals(&self) -> impl Iterator<Item = Interpretation> + '_ {
        self.pairs.iter().filter(|p| p.is_total()).map(|p| p.there)
    }

    /// All `here` components paired with `y`, ascending.
    pub fn heres_of(&self, y: Interpretation) -> impl Iterator<Item = Interpretation> + '_ {
        self.pairs
            .range(SePair::new(AtomSet::EMPTY, y)..=SePair::total(y))
            .filter(move |p| p.there == y)
            .map(|p| p.here)
    }

    /// The same pairs without the relativizer annotation.
    pub fn into_plain(mut self) -> Self {
        self.relativizer = None;
        self
    }

    /// Every non-total pair has its `there` present as a total pair.
    pub fn is_total_closed(&self) -> bool {
        self.pairs.iter().all(|p| self.contains_total(p.there))
    }

    /// Checks the structural invariants: pairs inside the alphabet, and with
    /// a relativizer `B`, every non-total pair has `here ⊂ there ∩ B`.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for p in &self.pairs {
            if !p.here.is_subset(p.there) || !p.there.is_subset(self.alphabet) {
                return Err(format!("{} escapes the alphabet", p.show(&self.symbols)));
            }
            if let Some(b) = self.relativizer {
                if !p.is_total() && !p.here.is_proper_subset(p.there & b) {
                    return Err(format!(
                        "{} is not a relativized SE-interpretation for {}",
                        p.show(&self.symbols),
                        self.symbols.show(b)
                    ));
                }
            }
        }
        Ok(())
    }

    /// Pair sets are equal once both are expressed by atom names.
    pub fn same_pairs(&self, other: &SeModelSet) -> bool {
        if self.symbols.same(&other.symbols) {
            return self.pairs == other.pairs;
        }
        self.named_pairs() == other.named_pairs()
    }

    fn named_pairs(&self) -> BTreeSet<(Vec<String>, Vec<String>)> {
        self.pairs
            .iter()
            .map(|p| {
                (
                    self.symbols.sorted_names(p.here),
                    self.symbols.sorted_names(p.there),
                )
            })
            .collect()
    }

    /// Pairs present in `self` and missing from `other`.
    pub fn difference(&self, other: &SeModelSet) -> Vec<SePair> {
        self.pairs
            .iter()
            .filter(|p| !other.pairs.contains(p))
            .copied()
            .collect()
    }

    /// Re-expresses the set over another symbol table.
    pub fn translate(&self, target: &Symbols) -> Result<SeModelSet> {
        let tr = |s| self.symbols.translate(s, target);
        let pairs = self
            .pairs
            .iter()
            .map(|p| Ok(SePair::new(tr(p.here)?, tr(p.there)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeModelSet::new(
            target.clone(),
            tr(self.alphabet)?,
            self.relativizer.map(tr).transpose()?,
            pairs,
        ))
    }

    /// Human-readable listing, one pair per line.
    pub fn render(&self) -> String {
        self.pairs
            .iter()
            .map(|p| p.show(&self.symbols) + "\n")
            .collect()
    }

    pub fn to_json(&self) -> SeModelSetJson {
        let names = |s: AtomSet| self.symbols.sorted_names(s);
        SeModelSetJson {
            alphabet: names(self.alphabet),
            relativizer: self.relativizer.map(names),
            pairs: self
                .pairs
                .iter()
                .map(|p| PairJson {
                    here: names(p.here),
                    there: names(p.there),
                })
                .collect(),
        }
    }
}

/// Wire form of an SE-model set. Atoms are sorted by name; pairs keep the
/// canonical order.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeModelSetJson {
    pub alphabet: Vec<String>,
    pub relativizer: Option<Vec<String>>,
    pub pairs: Vec<PairJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairJson {
    pub here: Vec<String>,
    pub there: Vec<String>,
}

/// `I ⊨ P`.
pub fn is_model(i: Interpretation, p: &Program) -> bool {
    p.is_model(i)
}

/// The GL-reduct `P^I`.
pub fn reduct(p: &Program, i: Interpretation) -> Program {
    p.reduct(i)
}

/// Rules of `P^Y` as positive rules.
fn reduct_rules(rules: &[Rule], y: Interpretation) -> Vec<Rule> {
    rules
        .iter()
        .filter(|r| r.survives_reduct(y))
        .map(Rule::positive_part)
        .collect()
}

fn satisfies_positive(rules: &[Rule], x: Interpretation) -> bool {
    rules
        .iter()
        .all(|r| r.head.intersects(x) || !r.pos.is_subset(x))
}

/// All `X ⊆ Y` with `X ⊨ P^Y`, ascending.
pub(crate) fn reduct_models_below(p: &Program, y: Interpretation) -> Vec<Interpretation> {
    let red = reduct_rules(p.rules(), y);
    y.subsets().filter(|&x| satisfies_positive(&red, x)).collect()
}

/// Answer sets: the `I ⊆ U` that are ⊆-minimal models of `P^I`.
pub fn answer_sets(p: &Program) -> Vec<Interpretation> {
    p.universe()
        .subsets()
        .filter(|&y| p.is_model(y))
        .filter(|&y| {
            let red = reduct_rules(p.rules(), y);
            // Y itself models the reduct, so only proper subsets can refute
            // minimality.
            y.subsets()
                .take_while(|&x| x != y)
                .all(|x| !satisfies_positive(&red, x))
        })
        .collect()
}

/// `SE(P)`: all `⟨X, Y⟩` with `Y ⊨ P` and `X ⊨ P^Y`.
pub fn se_models(p: &Program) -> SeModelSet {
    let mut pairs = Vec::new();
    for y in p.universe().subsets() {
        if !p.is_model(y) {
            continue;
        }
        pairs.extend(
            reduct_models_below(p, y)
                .into_iter()
                .map(|x| SePair::new(x, y)),
        );
    }
    SeModelSet::new(p.symbols().clone(), p.universe(), None, pairs)
}

/// A relativized SE-model together with the full-alphabet witness `X'`
/// found for its `here` component (the first in canonical order).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessedPair {
    pub pair: SePair,
    pub witness: Interpretation,
}

/// `SE^B(P)` restricted to `there ⊆ ys`, with witnesses.
pub(crate) fn rel_se_core(p: &Program, b: AtomSet, ys: AtomSet) -> Vec<WitnessedPair> {
    let mut out = Vec::new();
    for y in (ys & p.universe()).subsets() {
        if !p.is_model(y) {
            continue;
        }
        let models = reduct_models_below(p, y);
        let yb = y & b;
        // (ii): no Y' ⊂ Y agreeing with Y on B models the reduct.
        if models.iter().any(|&x| x != y && x & b == yb) {
            continue;
        }
        let mut witnesses: BTreeMap<AtomSet, AtomSet> = BTreeMap::new();
        for &x in &models {
            let xb = x & b;
            if xb.is_proper_subset(yb) {
                witnesses.entry(xb).or_insert(x);
            }
        }
        for (xb, w) in witnesses {
            out.push(WitnessedPair {
                pair: SePair::new(xb, y),
                witness: w,
            });
        }
        out.push(WitnessedPair {
            pair: SePair::total(y),
            witness: y,
        });
    }
    out
}

/// `SE^B(P)`: the relativized SE-models of `P` with respect to `B`.
///
/// `⟨X, Y⟩` with either `X = Y` or `X ⊂ Y ∩ B` is included iff
/// `Y ⊨ P`, no `Y' ⊂ Y` with `Y' ∩ B = Y ∩ B` models `P^Y`, and, when
/// `X ⊂ Y`, some `X' ⊆ Y` with `X' ∩ B = X` models `P^Y`.
pub fn rel_se_models(p: &Program, b: AtomSet) -> SeModelSet {
    se_models_restricted(p, p.universe(), b)
}

/// [`rel_se_models`] with the `X'` witness recorded for each pair.
pub fn rel_se_models_with_witnesses(p: &Program, b: AtomSet) -> Vec<WitnessedPair> {
    rel_se_core(p, b & p.universe(), p.universe())
}

/// `SE^{A1,A2}(P)`: the `A2`-relativized SE-models whose `there` lies in
/// `A1`.
pub fn se_models_restricted(p: &Program, a1: AtomSet, a2: AtomSet) -> SeModelSet {
    let b = a2 & p.universe();
    let pairs = rel_se_core(p, b, a1).into_iter().map(|w| w.pair);
    SeModelSet::new(p.symbols().clone(), a1 & p.universe(), Some(b), pairs)
}
