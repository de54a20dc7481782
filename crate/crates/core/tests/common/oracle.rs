//! Naive semantics over atom names, written directly from the definitions
//! and sharing no code with the library beyond the parsed rule lists.

use std::collections::BTreeSet;

use relsimp::Program;

pub type Names = BTreeSet<String>;
pub type NPair = (Names, Names);

#[derive(Clone, Debug)]
pub struct NRule {
    pub head: Names,
    pub pos: Names,
    pub neg: Names,
    pub dneg: Names,
}

#[derive(Clone, Debug)]
pub struct NProg {
    pub universe: Vec<String>,
    pub rules: Vec<NRule>,
}

impl NProg {
    pub fn of(p: &Program) -> NProg {
        let syms = p.symbols();
        let names = |s| syms.sorted_names(s).into_iter().collect::<Names>();
        NProg {
            universe: syms.sorted_names(p.universe()),
            rules: p
                .rules()
                .iter()
                .map(|r| NRule {
                    head: names(r.head),
                    pos: names(r.pos),
                    neg: names(r.neg),
                    dneg: names(r.dneg),
                })
                .collect(),
        }
    }
}

pub fn names(s: &str) -> Names {
    s.chars().map(|c| c.to_string()).collect()
}

pub fn subsets_of(items: &Names) -> Vec<Names> {
    let v: Vec<&String> = items.iter().collect();
    (0..1u64 << v.len())
        .map(|m| {
            v.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, s)| (*s).clone())
                .collect()
        })
        .collect()
}

fn universe(p: &NProg) -> Names {
    p.universe.iter().cloned().collect()
}

fn meets(a: &Names, b: &Names) -> bool {
    a.iter().any(|x| b.contains(x))
}

pub fn satisfies(i: &Names, p: &NProg) -> bool {
    p.rules.iter().all(|r| {
        meets(&r.head, i) || meets(&r.neg, i) || !r.pos.is_subset(i) || !r.dneg.is_subset(i)
    })
}

/// `X ⊨ P^Y`, building the reduct explicitly.
pub fn satisfies_reduct(x: &Names, p: &NProg, y: &Names) -> bool {
    p.rules
        .iter()
        .filter(|r| !meets(&r.neg, y) && r.dneg.is_subset(y))
        .all(|r| meets(&r.head, x) || !r.pos.is_subset(x))
}

pub fn answer_sets(p: &NProg) -> BTreeSet<Names> {
    subsets_of(&universe(p))
        .into_iter()
        .filter(|y| satisfies(y, p))
        .filter(|y| {
            subsets_of(y)
                .iter()
                .all(|x| x == y || !satisfies_reduct(x, p, y))
        })
        .collect()
}

pub fn se(p: &NProg) -> BTreeSet<NPair> {
    let mut out = BTreeSet::new();
    for y in subsets_of(&universe(p)) {
        if !satisfies(&y, p) {
            continue;
        }
        for x in subsets_of(&y) {
            if satisfies_reduct(&x, p, &y) {
                out.insert((x, y.clone()));
            }
        }
    }
    out
}

fn inter(a: &Names, b: &Names) -> Names {
    a.intersection(b).cloned().collect()
}

fn minus(a: &Names, b: &Names) -> Names {
    a.difference(b).cloned().collect()
}

/// Relativized SE-models, quantifying over all candidate `Y'` and `X'`.
pub fn rel_se(p: &NProg, b: &Names) -> BTreeSet<NPair> {
    let mut out = BTreeSet::new();
    for y in subsets_of(&universe(p)) {
        if !satisfies(&y, p) {
            continue;
        }
        let yb = inter(&y, b);
        let blocked = subsets_of(&y)
            .iter()
            .any(|y2| y2 != &y && inter(y2, b) == yb && satisfies_reduct(y2, p, &y));
        if blocked {
            continue;
        }
        out.insert((y.clone(), y.clone()));
        for x in subsets_of(&yb) {
            if x == yb {
                continue;
            }
            let witnessed = subsets_of(&y)
                .iter()
                .any(|x2| inter(x2, b) == x && satisfies_reduct(x2, p, &y));
            if witnessed {
                out.insert((x, y.clone()));
            }
        }
    }
    out
}

/// A-B-SE-models from the set definition.
pub fn abse(p: &NProg, a: &Names, b: &Names) -> BTreeSet<NPair> {
    let rel = rel_se(p, b);
    let totals: Vec<&Names> = rel.iter().filter(|(x, y)| x == y).map(|(_, y)| y).collect();
    let mut out = BTreeSet::new();
    for y in &totals {
        out.insert((minus(y, a), minus(y, a)));
    }
    for (x, y) in rel.iter().filter(|(x, y)| x != y) {
        let (xp, yp) = (minus(x, a), minus(y, a));
        let ok = totals.iter().filter(|y2| minus(y2, a) == yp).all(|y2| {
            rel.iter()
                .any(|(x2, y3)| y3 == *y2 && minus(x2, a) == xp)
        });
        if ok {
            out.insert((xp, yp));
        }
    }
    out
}

/// The family of sets for one `Y ⊆ Ā` computed from a relativized model set.
pub fn family(rel: &BTreeSet<NPair>, a: &Names, y: &Names) -> BTreeSet<BTreeSet<Names>> {
    let mut fam = BTreeSet::new();
    for ap in subsets_of(a) {
        let there: Names = y.union(&ap).cloned().collect();
        if !rel.contains(&(there.clone(), there.clone())) {
            continue;
        }
        let heres = rel
            .iter()
            .filter(|(_, t)| *t == there)
            .map(|(x, _)| minus(x, a))
            .collect();
        fam.insert(heres);
    }
    fam
}

fn no_least(fam: &BTreeSet<BTreeSet<Names>>) -> bool {
    !fam.is_empty() && !fam.iter().any(|s| fam.iter().all(|t| s.is_subset(t)))
}

/// Criterion Ω_{A,B}.
pub fn omega(p: &NProg, a: &Names, b: &Names) -> bool {
    let rel = rel_se(p, b);
    let kept = minus(&universe(p), a);
    subsets_of(&kept)
        .iter()
        .any(|y| no_least(&family(&rel, a, y)))
}

/// Criterion Ω for forgetting, from Ā-SE-models.
pub fn omega_forgetting(p: &NProg, a: &Names) -> bool {
    let kept = minus(&universe(p), a);
    let rel = rel_se(p, &kept);
    subsets_of(&kept)
        .iter()
        .any(|y| no_least(&family(&rel, a, y)))
}

/// The three Δ conditions of strong simplification on plain SE-models.
pub fn delta_strong(p: &NProg, a: &Names) -> [bool; 3] {
    let s = se(p);
    let s1 = s
        .iter()
        .filter(|(x, y)| x == y)
        .all(|(_, y)| a.is_subset(y));
    let s2 = s
        .iter()
        .all(|(x, y)| minus(x, a) != minus(y, a) || x == y);
    let s3 = s.iter().all(|(x, y)| {
        let up: Names = x.union(&inter(y, a)).cloned().collect();
        s.contains(&(up, y.clone()))
    });
    [s1, s2, s3]
}

/// Δʳ conditions.
pub fn delta_rel(p: &NProg, a: &Names, b: &Names) -> [bool; 3] {
    let rel = rel_se(p, b);
    let s = se(p);
    let ab = inter(a, b);
    let s1 = rel
        .iter()
        .filter(|(x, y)| x == y)
        .all(|(_, y)| ab.is_subset(y));
    let s2 = s
        .iter()
        .filter(|(_, y)| rel.contains(&(y.clone(), y.clone())))
        .all(|(x, y)| minus(x, a) != minus(y, a) || x == y);
    let s3 = rel.iter().all(|(x, y)| {
        let up: Names = x.union(&inter(y, &ab)).cloned().collect();
        rel.contains(&(up, y.clone()))
    });
    [s1, s2, s3]
}

/// Library pair sets in name form.
pub fn named(set: &relsimp::SeModelSet) -> BTreeSet<NPair> {
    let syms = set.symbols();
    set.pairs()
        .iter()
        .map(|p| {
            (
                syms.sorted_names(p.here).into_iter().collect(),
                syms.sorted_names(p.there).into_iter().collect(),
            )
        })
        .collect()
}

/// Pairs written as letter strings, e.g. `("b", "bca")`.
pub fn letter_pairs(items: &[(&str, &str)]) -> BTreeSet<NPair> {
    items.iter().map(|(x, y)| (names(x), names(y))).collect()
}
