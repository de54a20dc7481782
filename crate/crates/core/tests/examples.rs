//! Worked examples, each checked against the naive oracle where the expected
//! value is computed rather than quoted.

mod common;

use std::collections::BTreeSet;

use common::oracle::{self, letter_pairs, named, names, NProg};
use common::{prog, set};
use relsimp::*;

fn p1() -> Program {
    prog("a :- b, c. c :- d. b.")
}

fn p2() -> Program {
    prog("a :- not b. b :- not a. c.")
}

fn p3() -> Program {
    prog("a :- p. b :- q. p :- not q. q :- not p.")
}

fn as_names(p: &Program, sets: &[AtomSet]) -> BTreeSet<oracle::Names> {
    sets.iter()
        .map(|&s| p.symbols().sorted_names(s).into_iter().collect())
        .collect()
}

#[test]
fn parse_examples() {
    let p = prog("b.");
    assert_eq!(p.len(), 1);
    assert_eq!(p.universe(), set(&p, "b"));
    let p = prog("a :- not not a.");
    assert_eq!(p.rules()[0].head, set(&p, "a"));
    assert_eq!(p.rules()[0].dneg, set(&p, "a"));
    assert!(p.rules()[0].pos.is_empty() && p.rules()[0].neg.is_empty());
    assert_eq!(p1().len(), 3);
}

#[test]
fn print_examples() {
    let p = p1();
    assert!(parse_program(&format_program(&p)).unwrap().same_as(&p));
    assert_eq!(format_program(&prog(":- f.")).trim(), ":- f.");
    let empty = prog("#universe a.");
    assert!(empty.is_empty());
    assert!(format_program(&empty).starts_with("#universe"));
}

#[test]
fn projection_examples() {
    let p = p1();
    assert!(p.project(AtomSet::EMPTY).same_as(&p));
    let q = prog("a :- not b.");
    assert!(q.project(set(&q, "b")).is_empty());
}

#[test]
fn separation_examples() {
    let r = prog("#universe b. c.");
    assert!(r.is_a_separated(set(&r, "bc")));
    let r = prog("a :- c.");
    assert!(!r.is_a_separated(set(&r, "c")));
    assert!(p1().is_a_separated(AtomSet::EMPTY));
}

#[test]
fn model_and_reduct_examples() {
    let p = p1();
    assert!(is_model(set(&p, "b"), &p));
    assert!(!is_model(AtomSet::EMPTY, &p));
    assert!(is_model(set(&p, "ab"), &p));
    let q = prog("a :- not b.");
    assert!(reduct(&q, AtomSet::EMPTY).same_as(&prog("#universe b. a.")));
    let q = prog("a :- not not a.");
    assert!(reduct(&q, set(&q, "a")).same_as(&prog("a.")));
    assert!(reduct(&q, AtomSet::EMPTY).is_empty());
    for y in p.universe().subsets() {
        assert!(reduct(&p, y).same_as(&p));
    }
}

#[test]
fn answer_set_examples() {
    for (text, expected) in [
        ("a :- b, c. c :- d. b.", vec![names("b")]),
        ("a :- not b. b :- not a. c.", vec![names("ac"), names("bc")]),
        (":- not s.", vec![]),
    ] {
        let p = prog(text);
        let got = as_names(&p, &answer_sets(&p));
        assert_eq!(got, expected.into_iter().collect());
        assert_eq!(got, oracle::answer_sets(&NProg::of(&p)));
    }
}

#[test]
fn se_model_examples() {
    let p = prog("#universe a.");
    assert_eq!(named(&se_models(&p)), letter_pairs(&[("", ""), ("", "a"), ("a", "a")]));
    for p in [p1(), p2(), p3()] {
        let se = se_models(&p);
        assert_eq!(named(&se), oracle::se(&NProg::of(&p)));
        let direct: BTreeSet<AtomSet> = answer_sets(&p).into_iter().collect();
        let from_se: BTreeSet<AtomSet> = se
            .totals()
            .filter(|&y| se.heres_of(y).all(|x| x == y))
            .collect();
        assert_eq!(direct, from_se);
    }
}

#[test]
fn relativized_examples() {
    for p in [p1(), p2(), p3()] {
        let u = p.universe();
        assert!(rel_se_models(&p, u).same_pairs(&se_models(&p)));
        let totals: BTreeSet<oracle::NPair> = as_names(&p, &answer_sets(&p))
            .into_iter()
            .map(|y| (y.clone(), y))
            .collect();
        assert_eq!(named(&rel_se_models(&p, AtomSet::EMPTY)), totals);
        for b in u.subsets() {
            let bn = p.symbols().sorted_names(b).into_iter().collect();
            assert_eq!(named(&rel_se_models(&p, b)), oracle::rel_se(&NProg::of(&p), &bn));
        }
    }
}

#[test]
fn restricted_examples() {
    let q1 = prog("a :- d.");
    let ad = q1.universe();
    assert!(se_models_restricted(&q1, ad, ad).same_pairs(&se_models(&q1)));
    let p = p1();
    let u = p.universe();
    assert!(se_models_restricted(&p, u, u).same_pairs(&se_models(&p)));
    assert!(se_models_restricted(&p, AtomSet::EMPTY, u).is_empty());
    let q = prog("#universe a. :- a.");
    assert_eq!(named(&se_models_restricted(&q, AtomSet::EMPTY, q.universe())), letter_pairs(&[("", "")]));
}

#[test]
fn ab_se_examples() {
    let p = p1();
    for a in p.universe().subsets() {
        for b in p.universe().subsets() {
            let ctx = RelCtx::new(p.universe(), a, b).unwrap();
            let an = p.symbols().sorted_names(a).into_iter().collect();
            let bn = p.symbols().sorted_names(b).into_iter().collect();
            assert_eq!(
                named(&ab_se_models(&p, &ctx).unwrap()),
                oracle::abse(&NProg::of(&p), &an, &bn)
            );
        }
        let ctx = RelCtx::new(p.universe(), AtomSet::EMPTY, a).unwrap();
        assert!(ab_se_models(&p, &ctx).unwrap().same_pairs(&rel_se_models(&p, a)));
    }
}

#[test]
fn p1_prime_loses_empty_a_once_both_witnesses_go() {
    // Dropping <ab,abc> alone leaves <b,abc>, which also projects to <,a>;
    // dropping both removes exactly <,a>.
    let p = p1();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "b", "d"])).unwrap();
    let gone = [SePair::new(set(&p, "ab"), set(&p, "abc")), SePair::new(set(&p, "b"), set(&p, "abc"))];
    let se = se_models(&p);
    let target = SeModelSet::new(
        p.symbols().clone(),
        p.universe(),
        None,
        se.pairs().iter().copied().filter(|q| !gone.contains(q)),
    );
    let p1v = canonical_program(&target, p.universe()).unwrap();
    let before = named(&ab_se_models(&p, &ctx).unwrap());
    let after = named(&ab_se_models(&p1v, &ctx).unwrap());
    let lost: BTreeSet<_> = before.difference(&after).cloned().collect();
    assert_eq!(lost, letter_pairs(&[("", "a")]));
    assert!(after.is_subset(&before));
}

#[test]
fn delta_examples() {
    let p = p1();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "b", "d"])).unwrap();
    assert!(check_delta(&p, &ctx).unwrap().holds());
    let ctx = RelCtx::named(&p, &["b", "c"], None).unwrap();
    let d = check_delta(&p, &ctx).unwrap();
    assert!(!d.s1.holds);
    assert_eq!(d.s1.witness, Some(SePair::total(set(&p, "b"))));
    let np = NProg::of(&p);
    for a in p.universe().subsets() {
        for b in p.universe().subsets() {
            let ctx = RelCtx::new(p.universe(), a, b).unwrap();
            let d = check_delta(&p, &ctx).unwrap();
            let an = p.symbols().sorted_names(a).into_iter().collect();
            let bn = p.symbols().sorted_names(b).into_iter().collect();
            assert_eq!([d.s1.holds, d.s2.holds, d.s3.holds], oracle::delta_rel(&np, &an, &bn));
            if b.is_disjoint(a) {
                assert!(d.holds());
            }
        }
    }
}

#[test]
fn omega_examples() {
    for p in [p1(), p2(), p3()] {
        let np = NProg::of(&p);
        let u = p.universe();
        for a in u.subsets() {
            let an = p.symbols().sorted_names(a).into_iter().collect();
            for b in u.subsets() {
                let ctx = RelCtx::new(u, a, b).unwrap();
                let bn = p.symbols().sorted_names(b).into_iter().collect();
                let om = check_omega(&p, &ctx).unwrap().satisfied;
                assert_eq!(om, oracle::omega(&np, &an, &bn));
                if a.is_empty() || b.is_empty() {
                    assert!(!om);
                }
            }
            let ctx = RelCtx::new(u, a, u - a).unwrap();
            assert_eq!(check_omega(&p, &ctx).unwrap().satisfied, oracle::omega_forgetting(&np, &an));
        }
    }
    let p = p1();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "b", "d"])).unwrap();
    assert!(!check_omega(&p, &ctx).unwrap().satisfied);
    let p = p3();
    let ctx = RelCtx::named(&p, &["p", "q"], Some(&["a", "b"])).unwrap();
    assert!(check_omega(&p, &ctx).unwrap().satisfied);
}

#[test]
fn family_is_empty_without_total_extension() {
    let p = p1();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "b", "d"])).unwrap();
    let fam = ry_family(&p, &ctx, set(&p, "d")).unwrap();
    assert!(fam.is_empty());
}

#[test]
fn verdict_examples() {
    let cases = [
        (p1(), &["b", "c"][..], Some(&["a", "b", "d"][..]), true),
        (p2(), &["b", "c"][..], None, false),
        (p3(), &["p", "q"][..], Some(&["a", "b"][..]), false),
    ];
    for (p, a, b, want) in cases {
        let ctx = RelCtx::named(&p, a, b).unwrap();
        let r = is_simplifiable(&p, &ctx).unwrap();
        assert_eq!(r.simplifiable, want, "{}", r.summary());
        assert_eq!(r.simplifiable, r.delta.holds() && !r.omega.satisfied);
    }
}

#[test]
fn equivalence_examples() {
    let p = p2();
    assert!(check_relativized_equivalence(&p, &p, p.universe()).unwrap());
    let q = prog("a :- not b. b :- not a. c. a :- b, not b.");
    assert!(check_relativized_equivalence(&p, &q, p.universe()).unwrap());
    let r = prog("a | b. c.");
    assert!(!check_relativized_equivalence(&p, &r, p.universe()).unwrap());
    assert!(check_relativized_equivalence(&p, &r, AtomSet::EMPTY).unwrap());
}

#[test]
fn canonical_examples() {
    let syms = Symbols::new(["a"]).unwrap();
    let all = SeModelSet::from_letters(&syms, syms.all(), None, &[("", ""), ("", "a"), ("a", "a")]).unwrap();
    assert!(canonical_program(&all, syms.all()).unwrap().is_empty());
    let only_a = SeModelSet::from_letters(&syms, syms.all(), None, &[("a", "a")]).unwrap();
    let q = canonical_program(&only_a, syms.all()).unwrap();
    assert_eq!(named(&se_models(&q)), letter_pairs(&[("a", "a")]));
    let dn = prog("a :- not not a.");
    let q = canonical_program(&se_models(&dn), dn.universe()).unwrap();
    assert!(se_models(&q).same_pairs(&se_models(&dn)));
}

#[test]
fn simplify_examples() {
    let p = p1();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "b", "d"])).unwrap();
    let s = simplify_detailed(&p, &ctx).unwrap();
    assert_eq!(s.projected, set(&p, "b"));
    assert_eq!(s.forgotten, set(&p, "c"));
    assert!(check_relativized_equivalence(&s.program, &prog("a :- d."), set(&p, "ad")).unwrap());

    let p = p2();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "c"])).unwrap();
    let q = forget_rss(&p, &ctx).unwrap();
    assert!(check_relativized_equivalence(&q, &prog("a :- not not a."), set(&p, "a")).unwrap());

    // A ⊆ B: pure projection
    let p = prog("a :- b. b :- c, not d. c. d :- not b.");
    let ctx = RelCtx::named(&p, &["c"], None).unwrap();
    let q = simplify(&p, &ctx).unwrap();
    let proj = p.project(set(&p, "c"));
    assert!(check_relativized_equivalence(&q, &proj, set(&p, "abd")).unwrap());

    // A = ∅: equivalent to p relative to B
    let p = p2();
    let b = set(&p, "ab");
    let ctx = RelCtx::new(p.universe(), AtomSet::EMPTY, b).unwrap();
    let q = simplify(&p, &ctx).unwrap();
    assert!(check_relativized_equivalence(&q, &p, b).unwrap());
}

#[test]
fn forgetting_examples() {
    let p = p3();
    let a = set(&p, "pq");
    assert!(forget_rsp(&p, a, set(&p, "ab")).is_err());

    let p = p2();
    let q = forget_rsp(&p, AtomSet::EMPTY, set(&p, "ab")).unwrap();
    assert!(check_relativized_equivalence(&q, &p, set(&p, "ab")).unwrap());

    // s = Ā is strong persistence forgetting
    let p = prog("a :- not b. b :- not a. c :- b.");
    let a = set(&p, "b");
    let q = forget_rsp(&p, a, p.universe() - a).unwrap();
    let rep = check_forgetting(&p, &q, a, p.universe() - a, &ContextBounds::default()).unwrap();
    assert!(rep.passed(), "{}", rep.render());
    let rss = forget_rss(&p, &RelCtx::new(p.universe(), a, p.universe() - a).unwrap()).unwrap();
    assert!(se_models(&q.with_universe(p.universe() - a).unwrap())
        .same_pairs(&se_models(&rss.with_universe(p.universe() - a).unwrap())));

    // s = ∅ is faithful abstraction: only answer sets matter
    let rep = check_forgetting(&p, &q, a, AtomSet::EMPTY, &ContextBounds::default()).unwrap();
    assert!(rep.passed());
    let projected: BTreeSet<AtomSet> = answer_sets(&p).into_iter().map(|y| y - a).collect();
    let direct: BTreeSet<AtomSet> = answer_sets(&q.with_universe(p.universe() - a).unwrap()).into_iter().collect();
    assert_eq!(projected, direct);
}

#[test]
fn forgetting_p1_atoms() {
    let p = p1();
    let bounds = ContextBounds::default();
    for a in p.universe().subsets() {
        let s = p.universe() - a;
        if let Ok(q) = forget_rsp(&p, a, s) {
            let rep = check_forgetting(&p, &q, a, s, &bounds).unwrap();
            assert!(rep.passed(), "{}", rep.render());
        }
    }
}

#[test]
fn verification_examples() {
    let bounds = ContextBounds::default();
    let p = p1();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "b", "d"])).unwrap();
    assert!(check_simplification(&p, &prog("a :- d."), &ctx, &bounds).unwrap().passed());

    let p = p2();
    let ctx = RelCtx::named(&p, &["b", "c"], Some(&["a", "c"])).unwrap();
    assert!(check_simplification(&p, &prog("a :- not not a."), &ctx, &bounds).unwrap().passed());

    let p = p1();
    let ctx = RelCtx::named(&p, &["b", "c"], None).unwrap();
    let q = p.project(set(&p, "bc"));
    let rep = check_simplification(&p, &q, &ctx, &bounds).unwrap();
    assert!(!rep.semantic_pass);
    assert!(!rep.operational_pass);
    let cx = rep.counterexample.expect("counterexample");
    assert!(cx.context.is_a_separated(set(&p, "bc")));
    assert_ne!(cx.as_p, cx.as_q);

    let p = p2();
    let rep = check_simplification(&p, &p, &RelCtx::new(p.universe(), AtomSet::EMPTY, p.universe()).unwrap(), &bounds).unwrap();
    assert!(rep.passed());
}

#[test]
fn qbf_examples() {
    let phi = parse_qbf(
        "forall u; exists v; forall w;\n\
         term u v w; term u v -w; term -u -v w; term -u -v -w;",
    )
    .unwrap();
    assert!(qbf_eval(&phi));
    let red = qbf_reduce(&phi).unwrap();
    let lhs: BTreeSet<AtomSet> = answer_sets(&red.p).into_iter().map(|y| y - red.a).collect();
    let rhs: BTreeSet<AtomSet> = answer_sets(&red.q).into_iter().collect();
    assert_eq!(lhs, rhs);

    let phi = parse_qbf("forall u; exists v; forall w; term u v w;").unwrap();
    assert!(!qbf_eval(&phi));
    let red = qbf_reduce(&phi).unwrap();
    let lhs: BTreeSet<AtomSet> = answer_sets(&red.p).into_iter().map(|y| y - red.a).collect();
    let rhs: BTreeSet<AtomSet> = answer_sets(&red.q).into_iter().collect();
    assert_ne!(lhs, rhs);

    let phi = parse_qbf("forall u; exists v; forall w;").unwrap();
    assert!(!qbf_eval(&phi));
    assert!(answer_sets(&qbf_reduce(&phi).unwrap().p).is_empty());

    let phi = parse_qbf("exists; forall w; term w w w; term -w -w -w;").unwrap();
    assert!(phi.u.is_empty() && phi.v.is_empty());
    assert!(qbf_eval(&phi));
    let phi = parse_qbf("exists; forall w; term w w w;").unwrap();
    assert!(!qbf_eval(&phi));
}
