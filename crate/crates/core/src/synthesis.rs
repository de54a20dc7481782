//! Programs from SE-model sets, relativized forgetting, and the
//! project-then-forget simplification operator.

use log::warn;

use crate::atoms::{AtomSet, Symbols};
use crate::error::{Error, Result};
use crate::relativized::{check_omega, intersection_models, is_simplifiable, RelCtx};
use crate::semantics::{se_models, se_models_restricted, SeModelSet};
use crate::syntax::{Program, Rule};

/// Builds a program over `alphabet` whose SE-models are exactly `target`.
///
/// Each `Y` without `⟨Y,Y⟩` gets the constraint `:- Y, not (V \ Y)`; each
/// missing `⟨X,Y⟩` below a present total gets
/// `⋁(Y \ X) :- X, not (V \ Y), not not (Y \ X)`. Both rules only bite at
/// the there-component `Y`. The result is re-checked before it is returned.
pub fn canonical_program(target: &SeModelSet, alphabet: AtomSet) -> Result<Program> {
    let syms = target.symbols();
    if let Some(p) = target.pairs().iter().find(|p| !p.there.is_subset(alphabet)) {
        return Err(Error::NotSubset {
            what: format!("pair {}", p.show(syms)),
            of: format!("alphabet {}", syms.show(alphabet)),
        });
    }
    if let Some(p) = target
        .pairs()
        .iter()
        .find(|p| !target.contains_total(p.there))
    {
        return Err(Error::NotTotalClosed(format!(
            "{} lacks <{}, {}>",
            p.show(syms),
            syms.show(p.there),
            syms.show(p.there)
        )));
    }
    let mut rules = Vec::new();
    for y in alphabet.subsets() {
        let outside = alphabet - y;
        if !target.contains_total(y) {
            rules.push(Rule::constraint(y, outside, AtomSet::EMPTY));
            continue;
        }
        let present: Vec<AtomSet> = target.heres_of(y).collect();
        for x in y.subsets().filter(|&x| x != y) {
            if present.binary_search(&x).is_err() {
                let missing = y - x;
                rules.push(Rule::new(missing, x, outside, missing));
            }
        }
    }
    let q = Program::new(syms.clone(), alphabet, rules)?;
    let got = se_models(&q);
    if !got.same_pairs(target) {
        return Err(Error::VerificationFailed(format!(
            "canonical program has SE-models differing from the target ({} vs {} pairs)",
            got.len(),
            target.len()
        )));
    }
    Ok(q)
}

/// The target `{⟨X,Y⟩ | Y ⊆ Ā, X ∈ ⋂ℛ^Y}` of relativized forgetting.
pub fn forgetting_target(p: &Program, ctx: &RelCtx) -> Result<SeModelSet> {
    intersection_models(p, ctx)
}

/// An F_rSS operator: forgets `A` from `p` relative to `B`.
///
/// The result is over `Ā` and its `(B \ A)`-relativized SE-models over `Ā`
/// equal the forgetting target; this is checked before returning.
pub fn forget_rss(p: &Program, ctx: &RelCtx) -> Result<Program> {
    let omega = check_omega(p, ctx)?;
    if let Some(fam) = &omega.witness {
        warn!(
            "criterion Omega holds at Y = {}; the forgetting result does not preserve answer sets",
            p.symbols().show(fam.y)
        );
    }
    let target = forgetting_target(p, ctx)?;
    let q = canonical_program(&target.clone().into_plain(), ctx.kept())?;
    let got = se_models_restricted(&q, ctx.kept(), ctx.b_minus_a());
    if !got.same_pairs(&target) {
        return Err(Error::VerificationFailed(format!(
            "relativized SE-models of the forgetting result differ from the target: extra {:?}, missing {:?}",
            got.difference(&target)
                .iter()
                .map(|x| x.show(p.symbols()))
                .collect::<Vec<_>>(),
            target
                .difference(&got)
                .iter()
                .map(|x| x.show(p.symbols()))
                .collect::<Vec<_>>(),
        )));
    }
    Ok(q)
}

/// A simplification together with how it was obtained.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub program: Program,
    pub ctx: RelCtx,
    /// `A ∩ B`, removed by syntactic projection.
    pub projected: AtomSet,
    /// `A \ B`, removed by forgetting.
    pub forgotten: AtomSet,
}

impl Simplification {
    /// Comment lines describing the run, for the top of an output file.
    pub fn header(&self) -> String {
        let syms = self.program.symbols();
        format!(
            "% relsimp simplify: A = {}, B = {}\n% projected: {}\n% forgotten: {}\n% verified: relativized SE-models match the forgetting target\n",
            syms.show(self.ctx.remove()),
            syms.show(self.ctx.context()),
            syms.show(self.projected),
            syms.show(self.forgotten),
        )
    }
}

/// A B-relativized A-simplification of `p`: project away `A ∩ B`, then
/// forget `A \ B` relative to `B \ A`.
pub fn simplify(p: &Program, ctx: &RelCtx) -> Result<Program> {
    simplify_detailed(p, ctx).map(|s| s.program)
}

pub fn simplify_detailed(p: &Program, ctx: &RelCtx) -> Result<Simplification> {
    let report = is_simplifiable(p, ctx)?;
    if !report.simplifiable {
        return Err(Error::NotSimplifiable(Box::new(report)));
    }
    let projected = ctx.a_and_b();
    let forgotten = ctx.a_minus_b();
    let stage = p.project(projected);
    let inner = RelCtx::new(stage.universe(), forgotten, ctx.b_minus_a())?;
    let program = forget_rss(&stage, &inner)?;
    Ok(Simplification {
        program,
        ctx: *ctx,
        projected,
        forgotten,
    })
}

/// Relativized strong persistence forgetting of `a` for contexts over `s`.
pub fn forget_rsp(p: &Program, a: AtomSet, s: AtomSet) -> Result<Program> {
    let kept = p.universe() - a;
    if !s.is_subset(kept) {
        return Err(Error::NotSubset {
            what: format!("context {}", p.symbols().show(s)),
            of: format!("the kept atoms {}", p.symbols().show(kept)),
        });
    }
    let ctx = RelCtx::new(p.universe(), a, s)?;
    let omega = check_omega(p, &ctx)?;
    if let Some(fam) = omega.witness {
        return Err(Error::OmegaSatisfied {
            witness: p.symbols().show(fam.y),
        });
    }
    forget_rss(p, &ctx)
}

/// Greedily drops rules, in order, whenever the SE-models stay the same.
pub fn minimize_rules(q: &Program) -> Result<Program> {
    let reference = se_models(q);
    let mut rules = q.rules().to_vec();
    let mut i = 0;
    while i < rules.len() {
        let mut trial = rules.clone();
        trial.remove(i);
        let candidate = Program::new(q.symbols().clone(), q.universe(), trial.clone())?;
        if se_models(&candidate).same_pairs(&reference) {
            rules = trial;
        } else {
            i += 1;
        }
    }
    Program::new(q.symbols().clone(), q.universe(), rules)
}

/// Renders a program with a trimmed symbol table: only its universe, in
/// the original order. Useful before handing results to other tools.
pub fn compact(q: &Program) -> Result<Program> {
    let names: Vec<&str> = q.symbols().names_of(q.universe());
    let syms = Symbols::new(names)?;
    q.rebase(&syms)
}
