//! Checking candidate simplifications and forgetting results against
//! enumerated context programs, and the QBF instance generator.

mod contexts;
mod qbf;

pub use contexts::{enumerate_contexts, ContextBounds, ContextFamily};
pub use qbf::{parse_qbf, qbf_eval, qbf_reduce, Literal, QbfInstance, QbfReduction};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::atoms::{AtomSet, Interpretation, Symbols};
use crate::error::{Error, Result};
use crate::relativized::{ab_se_models, check_omega, intersection_models, is_simplifiable, RelCtx};
use crate::semantics::{se_models, se_models_restricted, PairJson};
use crate::syntax::{format_program, Program};

/// Answer sets of `P ∪ R` for varying `R`, from the SE-models of `P`.
///
/// `Y` is an answer set of `P ∪ R` iff `Y ⊨ P ∪ R` and no `X ⊂ Y` models
/// both `P^Y` and `R^Y`.
pub struct AnswerSetTable {
    entries: Vec<(Interpretation, Vec<Interpretation>)>,
}

impl AnswerSetTable {
    pub fn new(p: &Program) -> Self {
        let se = se_models(p);
        let entries = se
            .totals()
            .map(|y| (y, se.heres_of(y).filter(|&x| x != y).collect()))
            .collect();
        AnswerSetTable { entries }
    }

    /// `AS(P ∪ r)`; `r` must not use atoms outside `P`'s universe.
    pub fn answer_sets_with(&self, r: &Program) -> Vec<Interpretation> {
        self.entries
            .iter()
            .filter(|(y, heres)| {
                r.is_model(*y) && !heres.iter().any(|&x| r.reduct_satisfied(x, *y))
            })
            .map(|(y, _)| *y)
            .collect()
    }
}

/// A context program on which the two sides disagree.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub context: Program,
    /// Answer sets of the original side, projected.
    pub as_p: BTreeSet<Interpretation>,
    /// Answer sets of the candidate side.
    pub as_q: BTreeSet<Interpretation>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub symbols: Symbols,
    /// The model equation holds and the original satisfies the
    /// simplifiability criteria.
    pub semantic_pass: bool,
    /// The criteria on the original program alone: `Δʳ` holds and `Ω` is
    /// not satisfied (only `Ω` for forgetting).
    pub criteria_pass: bool,
    /// Pairs only on the original side / only on the candidate side.
    pub semantic_diff: (Vec<crate::semantics::SePair>, Vec<crate::semantics::SePair>),
    /// No enumerated context distinguishes the programs.
    pub operational_pass: bool,
    pub contexts_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.semantic_pass && self.operational_pass
    }

    pub fn render(&self) -> String {
        let syms = &self.symbols;
        let mut out = String::new();
        out += &format!(
            "semantic check: {}{}\n",
            if self.semantic_pass { "pass" } else { "fail" },
            if self.criteria_pass { "" } else { " (original violates the criteria)" }
        );
        for p in &self.semantic_diff.0 {
            out += &format!("  only in original: {}\n", p.show(syms));
        }
        for p in &self.semantic_diff.1 {
            out += &format!("  only in candidate: {}\n", p.show(syms));
        }
        out += &format!(
            "operational check: {} ({} contexts{})\n",
            if self.operational_pass { "pass" } else { "fail" },
            self.contexts_checked,
            if self.operational_pass { ", bounded" } else { "" }
        );
        if let Some(cx) = &self.counterexample {
            let show = |s: &BTreeSet<Interpretation>| {
                let v: Vec<String> = s.iter().map(|&i| syms.show(i)).collect();
                format!("[{}]", v.join(", "))
            };
            out += "counterexample context:\n";
            for line in format_program(&cx.context).lines() {
                out += &format!("  {line}\n");
            }
            out += &format!("  original answer sets (projected): {}\n", show(&cx.as_p));
            out += &format!("  candidate answer sets: {}\n", show(&cx.as_q));
        }
        out += &format!(
            "verdict: {}\n",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }

    pub fn to_json(&self) -> VerificationJson {
        let syms = &self.symbols;
        let names = |s: Interpretation| syms.sorted_names(s);
        let pairs = |v: &[crate::semantics::SePair]| {
            v.iter()
                .map(|p| PairJson {
                    here: names(p.here),
                    there: names(p.there),
                })
                .collect()
        };
        VerificationJson {
            semantic_pass: self.semantic_pass,
            criteria_pass: self.criteria_pass,
            operational_pass: self.operational_pass,
            contexts_checked: self.contexts_checked,
            only_in_original: pairs(&self.semantic_diff.0),
            only_in_candidate: pairs(&self.semantic_diff.1),
            counterexample: self.counterexample.as_ref().map(|cx| CounterexampleJson {
                context: format_program(&cx.context),
                as_p: cx.as_p.iter().map(|&i| names(i)).collect(),
                as_q: cx.as_q.iter().map(|&i| names(i)).collect(),
            }),
            verdict: self.passed(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationJson {
    #[serde(rename = "semanticPass")]
    pub semantic_pass: bool,
    #[serde(rename = "criteriaPass")]
    pub criteria_pass: bool,
    #[serde(rename = "operationalPass")]
    pub operational_pass: bool,
    #[serde(rename = "contextsChecked")]
    pub contexts_checked: usize,
    #[serde(rename = "onlyInOriginal")]
    pub only_in_original: Vec<PairJson>,
    #[serde(rename = "onlyInCandidate")]
    pub only_in_candidate: Vec<PairJson>,
    pub counterexample: Option<CounterexampleJson>,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleJson {
    pub context: String,
    #[serde(rename = "asP")]
    pub as_p: Vec<Vec<String>>,
    #[serde(rename = "asQ")]
    pub as_q: Vec<Vec<String>>,
}

/// Re-expresses `q` over `p`'s symbol table with universe `kept`.
fn lift_candidate(p: &Program, q: &Program, kept: AtomSet) -> Result<Program> {
    let syms = p.symbols();
    for name in q.symbols().names_of(q.universe()) {
        match syms.index_of(name) {
            Some(i) if kept.contains(i) => {}
            _ => {
                return Err(Error::NotSubset {
                    what: format!("candidate atom `{name}`"),
                    of: format!("the kept atoms {}", syms.show(kept)),
                })
            }
        }
    }
    let names: Vec<&str> = q.symbols().names_of(q.universe());
    let sub = Symbols::new(names)?;
    q.rebase(&sub)?.rebase(syms)?.with_universe(kept)
}

/// Runs `AS(P ∪ R)_{|kept} = AS(Q ∪ R_{|kept})` over the family, where
/// `R_{|kept}` projects away `drop`. Contexts using the auxiliary `ε` are
/// skipped: projection drops their guard rules on the candidate side only.
/// Returns the count checked and the first failure.
fn operational(
    p: &Program,
    q: &Program,
    family: &ContextFamily,
    drop: AtomSet,
) -> Result<(usize, Option<Counterexample>)> {
    let ext = &family.symbols;
    let aux = family.aux();
    let p_ext = p.rebase(ext)?.with_universe(p.universe() | aux)?;
    let q_ext = q.rebase(ext)?.with_universe(q.universe() | AtomSet::singleton(family.f))?;
    let tp = AnswerSetTable::new(&p_ext);
    let tq = AnswerSetTable::new(&q_ext);
    let drop = drop.with(family.eps);
    let mut checked = 0;
    for r in &family.programs {
        if r.universe().contains(family.eps) {
            continue;
        }
        checked += 1;
        let as_p: BTreeSet<_> = tp.answer_sets_with(r).into_iter().map(|y| y - drop).collect();
        let rq = r.project(drop);
        let as_q: BTreeSet<_> = tq.answer_sets_with(&rq).into_iter().collect();
        if as_p != as_q {
            return Ok((
                checked,
                Some(Counterexample {
                    context: r.clone(),
                    as_p,
                    as_q,
                }),
            ));
        }
    }
    Ok((checked, None))
}

/// Checks whether `q` is a B-relativized A-simplification of `p`.
///
/// Semantic side: `SE^B_A(P) = SE^{Ā, B\A}(Q)` together with `Δʳ` and the
/// failure of `Ω_{A,B}`; the equation alone is only necessary. Operational side: the
/// answer-set equation for every enumerated `A`-separated context over `B`.
/// A semantic pass is conclusive; an operational pass is only as strong as
/// the bounds, while an operational failure comes with a concrete context.
pub fn check_simplification(
    p: &Program,
    q: &Program,
    ctx: &RelCtx,
    bounds: &ContextBounds,
) -> Result<VerificationReport> {
    let q = lift_candidate(p, q, ctx.kept())?;
    let lhs = ab_se_models(p, ctx)?;
    let rhs = se_models_restricted(&q, ctx.kept(), ctx.b_minus_a());
    let semantic_diff = (lhs.difference(&rhs), rhs.difference(&lhs));
    let criteria_pass = is_simplifiable(p, ctx)?.simplifiable;
    let semantic_pass = semantic_diff.0.is_empty() && semantic_diff.1.is_empty() && criteria_pass;

    let family = enumerate_contexts(p.symbols(), ctx.context(), ctx.remove(), bounds)?;
    let (contexts_checked, counterexample) = operational(p, &q, &family, ctx.remove())?;
    Ok(VerificationReport {
        symbols: family.symbols.clone(),
        semantic_pass,
        criteria_pass,
        semantic_diff,
        operational_pass: counterexample.is_none(),
        contexts_checked,
        counterexample,
    })
}

/// Checks `AS(Q ∪ R) = AS(P ∪ R)_{|Ā}` for enumerated `R` over `s`
/// (relativized strong persistence; `s = Ā` is strong persistence and
/// `s = ∅` faithful abstraction).
///
/// The semantic side compares `SE^{Ā,S}(Q)` with the forgetting target and
/// requires criterion `Ω_{A,S}` to fail.
pub fn check_forgetting(
    p: &Program,
    q: &Program,
    a: AtomSet,
    s: AtomSet,
    bounds: &ContextBounds,
) -> Result<VerificationReport> {
    let ctx = RelCtx::new(p.universe(), a, s)?;
    if !s.is_subset(ctx.kept()) {
        return Err(Error::NotSubset {
            what: format!("context {}", p.symbols().show(s)),
            of: format!("the kept atoms {}", p.symbols().show(ctx.kept())),
        });
    }
    let q = lift_candidate(p, q, ctx.kept())?;
    let target = intersection_models(p, &ctx)?;
    let got = se_models_restricted(&q, ctx.kept(), s);
    let semantic_diff = (target.difference(&got), got.difference(&target));
    let omega = check_omega(p, &ctx)?;
    let criteria_pass = !omega.satisfied;
    let semantic_pass = semantic_diff.0.is_empty() && semantic_diff.1.is_empty() && criteria_pass;

    let family = enumerate_contexts(p.symbols(), s, AtomSet::EMPTY, bounds)?;
    let (contexts_checked, counterexample) = operational(p, &q, &family, a)?;
    Ok(VerificationReport {
        symbols: family.symbols.clone(),
        semantic_pass,
        criteria_pass,
        semantic_diff,
        operational_pass: counterexample.is_none(),
        contexts_checked,
        counterexample,
    })
}
