//! A-B-SE-models, the Δʳ conditions, the ℛ^Y families and criterion
//! Ω_{A,B}, and the combined simplifiability verdict.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::atoms::{AtomSet, Interpretation, Symbols};
use crate::error::{Error, Result};
use crate::semantics::{rel_se_core, rel_se_models, se_models, PairJson, SeModelSet, SePair};
use crate::syntax::Program;

/// The triple `(U, A, B)`: universe, atoms to remove, context vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelCtx {
    universe: AtomSet,
    remove: AtomSet,
    context: AtomSet,
}

impl RelCtx {
    pub fn new(universe: AtomSet, remove: AtomSet, context: AtomSet) -> Result<Self> {
        for (what, set) in [("removal set", remove), ("context set", context)] {
            if !set.is_subset(universe) {
                return Err(Error::NotSubset {
                    what: what.into(),
                    of: "the universe".into(),
                });
            }
        }
        Ok(RelCtx {
            universe,
            remove,
            context,
        })
    }

    /// Context over the program's universe. `context = None` means `B = U`.
    pub fn for_program(p: &Program, remove: AtomSet, context: Option<AtomSet>) -> Result<Self> {
        RelCtx::new(p.universe(), remove, context.unwrap_or(p.universe()))
    }

    /// Same as [`RelCtx::for_program`] with atoms given by name.
    pub fn named(p: &Program, remove: &[&str], context: Option<&[&str]>) -> Result<Self> {
        let syms = p.symbols();
        let remove = syms.set_of(remove)?;
        let context = context.map(|c| syms.set_of(c)).transpose()?;
        RelCtx::for_program(p, remove, context)
    }

    pub fn universe(&self) -> AtomSet {
        self.universe
    }

    /// `A`.
    pub fn remove(&self) -> AtomSet {
        self.remove
    }

    /// `B`.
    pub fn context(&self) -> AtomSet {
        self.context
    }

    /// `Ā = U \ A`.
    pub fn kept(&self) -> AtomSet {
        self.universe - self.remove
    }

    pub fn a_and_b(&self) -> AtomSet {
        self.remove & self.context
    }

    pub fn a_minus_b(&self) -> AtomSet {
        self.remove - self.context
    }

    pub fn b_minus_a(&self) -> AtomSet {
        self.context - self.remove
    }

    fn check_program(&self, p: &Program) -> Result<()> {
        if p.universe() != self.universe {
            return Err(Error::NotSubset {
                what: "context universe".into(),
                of: "the program universe (they must coincide)".into(),
            });
        }
        Ok(())
    }
}

/// `SE^B(P)` grouped by `there`: for each total B-SE-model `Y`, the heres
/// paired with it (including `Y`).
struct RelIndex {
    by_there: BTreeMap<Interpretation, Vec<Interpretation>>,
}

impl RelIndex {
    fn build(p: &Program, b: AtomSet) -> Self {
        let mut by_there: BTreeMap<Interpretation, Vec<Interpretation>> = BTreeMap::new();
        for w in rel_se_core(p, b, p.universe()) {
            by_there.entry(w.pair.there).or_default().push(w.pair.here);
        }
        RelIndex { by_there }
    }

    /// Families `ℛ^Y` for every `Y ⊆ Ā` with at least one member, keyed by
    /// `Y`; each member is `(A', {X \ A})`, ordered by `A'`.
    fn families(&self, a: AtomSet) -> BTreeMap<Interpretation, Vec<(AtomSet, BTreeSet<Interpretation>)>> {
        let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for (&there, heres) in &self.by_there {
            let projected = heres.iter().map(|&x| x - a).collect();
            out.entry(there - a)
                .or_default()
                .push((there & a, projected));
        }
        for members in out.values_mut() {
            members.sort_by_key(|(ap, _)| *ap);
        }
        out
    }
}

/// `SE^B_A(P)`: projections of all total B-SE-models, and projections of
/// those non-total ones whose projected here can be matched under every
/// total B-SE-model with the same projection.
pub fn ab_se_models(p: &Program, ctx: &RelCtx) -> Result<SeModelSet> {
    ctx.check_program(p)?;
    let a = ctx.remove();
    let index = RelIndex::build(p, ctx.context());
    let mut pairs = BTreeSet::new();
    for (&y, heres) in &index.by_there {
        pairs.insert(SePair::total(y - a));
        for &x in heres.iter().filter(|&&x| x != y) {
            let (xp, yp) = (x - a, y - a);
            let stable = index
                .by_there
                .iter()
                .filter(|(&y2, _)| y2 - a == yp)
                .all(|(_, heres2)| heres2.iter().any(|&x2| x2 - a == xp));
            if stable {
                pairs.insert(SePair::new(xp, yp));
            }
        }
    }
    Ok(SeModelSet::new(p.symbols().clone(), ctx.kept(), None, pairs))
}

/// Verdict on one Δʳ condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaCheck {
    pub holds: bool,
    /// The first violating SE-interpretation in canonical order.
    pub witness: Option<SePair>,
}

impl DeltaCheck {
    fn from_witness(witness: Option<SePair>) -> Self {
        DeltaCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub s1: DeltaCheck,
    pub s2: DeltaCheck,
    pub s3: DeltaCheck,
    /// Diagnostic remarks, e.g. when Δʳ_s2 would give a different verdict
    /// over B-SE-models instead of plain SE-models.
    pub notes: Vec<String>,
}

impl DeltaReport {
    pub fn holds(&self) -> bool {
        self.s1.holds && self.s2.holds && self.s3.holds
    }

    pub fn checks(&self) -> [(&'static str, DeltaCheck); 3] {
        [("s1", self.s1), ("s2", self.s2), ("s3", self.s3)]
    }
}

/// Evaluates Δʳ_s1, Δʳ_s2 and Δʳ_s3.
///
/// * s1: every total B-SE-model `⟨Y,Y⟩` has `A ∩ B ⊆ Y`.
/// * s2: every `⟨X,Y⟩ ∈ SE(P)` whose `⟨Y,Y⟩` is a B-SE-model and with
///   `X \ A = Y \ A` is total.
/// * s3: `⟨X,Y⟩ ∈ SE^B(P)` implies `⟨X ∪ (Y ∩ A ∩ B), Y⟩ ∈ SE^B(P)`.
pub fn check_delta(p: &Program, ctx: &RelCtx) -> Result<DeltaReport> {
    ctx.check_program(p)?;
    let a = ctx.remove();
    let ab = ctx.a_and_b();
    let rel = rel_se_models(p, ctx.context());
    let plain = se_models(p);

    let s1 = rel
        .totals()
        .find(|&y| !ab.is_subset(y))
        .map(SePair::total);
    let s2 = plain
        .pairs()
        .iter()
        .find(|q| !q.is_total() && rel.contains_total(q.there) && q.here - a == q.there - a)
        .copied();
    let s3 = rel
        .pairs()
        .iter()
        .find(|q| !rel.contains(&SePair::new(q.here | (q.there & ab), q.there)))
        .copied();

    let mut notes = Vec::new();
    let s2_rel = rel
        .pairs()
        .iter()
        .find(|q| !q.is_total() && q.here - a == q.there - a);
    if s2_rel.is_none() != s2.is_none() {
        notes.push(format!(
            "s2 evaluated over SE^B(P) instead of SE(P) would {} (witness {})",
            if s2_rel.is_none() { "hold" } else { "fail" },
            s2.or(s2_rel.copied())
                .map(|q| q.show(p.symbols()))
                .unwrap_or_default()
        ));
    }
    Ok(DeltaReport {
        s1: DeltaCheck::from_witness(s1),
        s2: DeltaCheck::from_witness(s2),
        s3: DeltaCheck::from_witness(s3),
        notes,
    })
}

/// The family `ℛ^Y_{⟨P,A,B⟩}` for one `Y ⊆ Ā`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RYFamily {
    pub y: Interpretation,
    /// `(A', {X \ A | ⟨X, Y ∪ A'⟩ ∈ SE^B(P)})` for every `A' ⊆ A` with
    /// `⟨Y ∪ A', Y ∪ A'⟩ ∈ SE^B(P)`, ordered by `A'`.
    pub members: Vec<(AtomSet, BTreeSet<Interpretation>)>,
}

impl RYFamily {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The distinct sets of the family.
    pub fn sets(&self) -> BTreeSet<&BTreeSet<Interpretation>> {
        self.members.iter().map(|(_, s)| s).collect()
    }

    /// The ⊆-least set of the family, if there is one.
    pub fn least(&self) -> Option<&BTreeSet<Interpretation>> {
        let sets = self.sets();
        sets.iter()
            .find(|s| sets.iter().all(|t| s.is_subset(t)))
            .copied()
    }

    /// `⋂ ℛ^Y`; empty for an empty family.
    pub fn intersection(&self) -> BTreeSet<Interpretation> {
        let mut it = self.members.iter().map(|(_, s)| s);
        let Some(first) = it.next() else {
            return BTreeSet::new();
        };
        it.fold(first.clone(), |acc, s| &acc & s)
    }

    /// Non-empty without a least element.
    pub fn violates(&self) -> bool {
        !self.is_empty() && self.least().is_none()
    }

    pub fn render(&self, syms: &Symbols) -> String {
        let sets: Vec<String> = self
            .sets()
            .into_iter()
            .map(|s| {
                let inner: Vec<String> = s.iter().map(|&x| syms.show(x)).collect();
                format!("{{{}}}", inner.join(", "))
            })
            .collect();
        format!("{{{}}}", sets.join(", "))
    }

    /// The distinct sets as nested name lists.
    pub fn to_json(&self, syms: &Symbols) -> Vec<Vec<Vec<String>>> {
        self.sets()
            .into_iter()
            .map(|s| s.iter().map(|&x| syms.sorted_names(x)).collect())
            .collect()
    }
}

/// `ℛ^Y_{⟨P,A,B⟩}`.
pub fn ry_family(p: &Program, ctx: &RelCtx, y: Interpretation) -> Result<RYFamily> {
    ctx.check_program(p)?;
    if !y.is_subset(ctx.kept()) {
        return Err(Error::NotSubset {
            what: format!("Y = {}", p.symbols().show(y)),
            of: "the kept atoms".into(),
        });
    }
    let a = ctx.remove();
    let index = RelIndex::build(p, ctx.context());
    let members = a
        .subsets()
        .filter_map(|ap| {
            index
                .by_there
                .get(&(y | ap))
                .map(|heres| (ap, heres.iter().map(|&x| x - a).collect()))
        })
        .collect();
    Ok(RYFamily { y, members })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub satisfied: bool,
    /// The least witness `Y` in canonical order with its family.
    pub witness: Option<RYFamily>,
    /// How many `Y` witness the criterion.
    pub witness_count: usize,
}

/// Criterion `Ω_{A,B}`: some `Y ⊆ Ā` has a non-empty `ℛ^Y` without a
/// ⊆-least element.
pub fn check_omega(p: &Program, ctx: &RelCtx) -> Result<OmegaReport> {
    ctx.check_program(p)?;
    let index = RelIndex::build(p, ctx.context());
    let mut witness = None;
    let mut witness_count = 0;
    for (y, members) in index.families(ctx.remove()) {
        let fam = RYFamily { y, members };
        if fam.violates() {
            witness_count += 1;
            witness.get_or_insert(fam);
        }
    }
    Ok(OmegaReport {
        satisfied: witness.is_some(),
        witness,
        witness_count,
    })
}

/// `Ω_{A,B}` decided through `SE^B_A(P)`.
///
/// The criterion fails iff every total `⟨Y,Y⟩ ∈ SE^B_A(P)` has an extension
/// `⟨Y ∪ A', Y ∪ A'⟩ ∈ SE^B(P)` whose projected heres are exactly the heres
/// of `Y` in `SE^B_A(P)`. The set `{⟨X,Y⟩ | X ∈ ⋂ℛ^Y}` always equals
/// `SE^B_A(P)`, so comparing those two sets alone cannot separate the cases;
/// the test has to look at the individual family members.
pub fn check_omega_via_abse(p: &Program, ctx: &RelCtx) -> Result<bool> {
    let abse = ab_se_models(p, ctx)?;
    let a = ctx.remove();
    let index = RelIndex::build(p, ctx.context());
    for y in abse.totals() {
        let slice: BTreeSet<Interpretation> = abse.heres_of(y).collect();
        let matched = a.subsets().any(|ap| {
            index.by_there.get(&(y | ap)).is_some_and(|heres| {
                heres.iter().map(|&x| x - a).collect::<BTreeSet<_>>() == slice
            })
        });
        if !matched {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The pair set `{⟨X,Y⟩ | Y ⊆ Ā, X ∈ ⋂ℛ^Y}` (with `⋂ ∅ = ∅`), over `Ā`.
pub fn intersection_models(p: &Program, ctx: &RelCtx) -> Result<SeModelSet> {
    ctx.check_program(p)?;
    let index = RelIndex::build(p, ctx.context());
    let mut pairs = Vec::new();
    for (y, members) in index.families(ctx.remove()) {
        let fam = RYFamily { y, members };
        pairs.extend(fam.intersection().into_iter().map(|x| SePair::new(x, y)));
    }
    Ok(SeModelSet::new(
        p.symbols().clone(),
        ctx.kept(),
        Some(ctx.b_minus_a()),
        pairs,
    ))
}

/// Δʳ verdicts, Ω_{A,B} verdict, and whether a B-relativized
/// A-simplification exists.
#[derive(Clone, Debug)]
pub struct SimplifiabilityReport {
    pub symbols: Symbols,
    pub ctx: RelCtx,
    pub delta: DeltaReport,
    pub omega: OmegaReport,
    pub simplifiable: bool,
}

impl SimplifiabilityReport {
    /// One-line reason for the verdict.
    pub fn summary(&self) -> String {
        let syms = &self.symbols;
        let mut reasons = Vec::new();
        for (name, c) in self.delta.checks() {
            if let Some(w) = c.witness {
                reasons.push(format!("delta {name} fails at {}", w.show(syms)));
            }
        }
        if let Some(fam) = &self.omega.witness {
            reasons.push(format!(
                "Omega satisfied at Y = {} with family {}",
                syms.show(fam.y),
                fam.render(syms)
            ));
        }
        if reasons.is_empty() {
            "simplifiable".into()
        } else {
            reasons.join("; ")
        }
    }

    pub fn render(&self) -> String {
        let syms = &self.symbols;
        let mut out = format!(
            "A = {}, B = {}\n",
            syms.show(self.ctx.remove()),
            syms.show(self.ctx.context())
        );
        for (name, c) in self.delta.checks() {
            match c.witness {
                None => out += &format!("delta {name}: holds\n"),
                Some(w) => out += &format!("delta {name}: fails at {}\n", w.show(syms)),
            }
        }
        for note in &self.delta.notes {
            out += &format!("note: {note}\n");
        }
        match &self.omega.witness {
            None => out += "omega: not satisfied\n",
            Some(fam) => {
                out += &format!(
                    "omega: satisfied at Y = {} ({} witness{}), family {}\n",
                    syms.show(fam.y),
                    self.omega.witness_count,
                    if self.omega.witness_count == 1 { "" } else { "es" },
                    fam.render(syms)
                )
            }
        }
        out += if self.simplifiable {
            "verdict: simplifiable\n"
        } else {
            "verdict: not simplifiable\n"
        };
        out
    }

    pub fn to_json(&self) -> ReportJson {
        let syms = &self.symbols;
        let check = |c: DeltaCheck| CheckJson {
            holds: c.holds,
            witness: c.witness.map(|w| PairJson {
                here: syms.sorted_names(w.here),
                there: syms.sorted_names(w.there),
            }),
        };
        ReportJson {
            delta: DeltaJson {
                s1: check(self.delta.s1),
                s2: check(self.delta.s2),
                s3: check(self.delta.s3),
            },
            omega: OmegaJson {
                satisfied: self.omega.satisfied,
                witness_y: self.omega.witness.as_ref().map(|f| syms.sorted_names(f.y)),
                family: self.omega.witness.as_ref().map(|f| f.to_json(syms)),
            },
            simplifiable: self.simplifiable,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub delta: DeltaJson,
    pub omega: OmegaJson,
    pub simplifiable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaJson {
    pub s1: CheckJson,
    pub s2: CheckJson,
    pub s3: CheckJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub holds: bool,
    pub witness: Option<PairJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaJson {
    pub satisfied: bool,
    #[serde(rename = "witnessY")]
    pub witness_y: Option<Vec<String>>,
    pub family: Option<Vec<Vec<Vec<String>>>>,
}

/// Decides B-relativized A-simplifiability: Δʳ holds and Ω_{A,B} does not.
pub fn is_simplifiable(p: &Program, ctx: &RelCtx) -> Result<SimplifiabilityReport> {
    let delta = check_delta(p, ctx)?;
    let omega = check_omega(p, ctx)?;
    let simplifiable = delta.holds() && !omega.satisfied;
    Ok(SimplifiabilityReport {
        symbols: p.symbols().clone(),
        ctx: *ctx,
        delta,
        omega,
        simplifiable,
    })
}

/// Brings two programs onto one symbol table and one universe (the union).
pub fn align(p1: &Program, p2: &Program) -> Result<(Program, Program)> {
    let extra: Vec<String> = p2
        .symbols()
        .names()
        .iter()
        .filter(|n| p1.symbols().index_of(n).is_none())
        .cloned()
        .collect();
    let syms = if extra.is_empty() {
        p1.symbols().clone()
    } else {
        p1.symbols().extended(extra)?
    };
    let p1 = p1.rebase(&syms)?;
    let p2 = p2.rebase(&syms)?;
    let u = p1.universe() | p2.universe();
    Ok((p1.with_universe(u)?, p2.with_universe(u)?))
}

/// Strong equivalence relative to `b` (names resolved against `p1`): equal
/// B-SE-models over the union of both universes.
pub fn check_relativized_equivalence(p1: &Program, p2: &Program, b: AtomSet) -> Result<bool> {
    let names = p1.symbols().sorted_names(b);
    let (p1, p2) = align(p1, p2)?;
    let b = p1.symbols().set_of(&names)?;
    Ok(rel_se_models(&p1, b).same_pairs(&rel_se_models(&p2, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn p1() -> Program {
        parse_program("a :- b, c. c :- d. b.").unwrap()
    }

    #[test]
    fn ctx_rejects_foreign_atoms() {
        let p = parse_program("a.").unwrap();
        assert!(RelCtx::new(p.universe(), AtomSet::singleton(3), p.universe()).is_err());
    }

    #[test]
    fn p1_delta_fails_for_full_context() {
        let p = p1();
        let ctx = RelCtx::named(&p, &["b", "c"], None).unwrap();
        let d = check_delta(&p, &ctx).unwrap();
        let b = p.symbols().set_of(["b"]).unwrap();
        assert_eq!(d.s1.witness, Some(SePair::total(b)));
    }

    #[test]
    fn family_members_contain_y() {
        let p = p1();
        let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "b", "d"])).unwrap();
        for y in ctx.kept().subsets() {
            let fam = ry_family(&p, &ctx, y).unwrap();
            for (_, s) in &fam.members {
                assert!(s.contains(&y));
            }
        }
    }

    #[test]
    fn empty_family_intersection_is_empty() {
        let fam = RYFamily {
            y: AtomSet::EMPTY,
            members: vec![],
        };
        assert!(fam.intersection().is_empty());
        assert!(!fam.violates());
    }

    #[test]
    fn equivalence_over_different_tables() {
        let a = parse_program("a :- not not a.").unwrap();
        let b = parse_program("a | c.").unwrap();
        let u = a.symbols().set_of(["a"]).unwrap();
        assert!(check_relativized_equivalence(&a, &a, u).unwrap());
        assert!(!check_relativized_equivalence(&a, &b, u).unwrap());
    }
}
