#![allow(dead_code)]

pub mod oracle;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use relsimp::{parse_program, se_models, AtomSet, Program, Rule, SePair, Symbols};

pub const LETTERS: [&str; 4] = ["a", "b", "c", "d"];

pub fn prog(text: &str) -> Program {
    parse_program(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Atom set from one-letter names, e.g. `"abd"`.
pub fn set(p: &Program, letters: &str) -> AtomSet {
    p.symbols()
        .set_of(letters.chars().map(|c| c.to_string()))
        .unwrap()
}

/// A random program over the first `n` letters, with up to `max_rules`
/// rules mixing all literal kinds.
pub fn random_program(rng: &mut ChaCha8Rng, n: usize, max_rules: usize) -> Program {
    let syms = Symbols::new(LETTERS[..n].iter().copied()).unwrap();
    let k = rng.gen_range(0..=max_rules);
    let mut rules = Vec::new();
    for _ in 0..k {
        let mut r = Rule::default();
        for i in 0..n {
            if rng.gen_bool(0.3) {
                r.head.insert(i);
            }
            match rng.gen_range(0..8) {
                0 | 1 => r.pos.insert(i),
                2 => r.neg.insert(i),
                3 => r.dneg.insert(i),
                _ => {}
            }
        }
        rules.push(r);
    }
    Program::new(syms.clone(), syms.all(), rules).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, of: AtomSet) -> AtomSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Checks the five context-program properties for `r`, whose removal set
/// is `a` (already including any auxiliary atom removed with it). Returns
/// a description for each violated property, indexed (a) to (e).
pub fn lemma1_violations(r: &Program, a: AtomSet) -> [Option<String>; 5] {
    let w = r.universe();
    let a = a & w;
    let rp = r.project(a);
    let se_r = se_models(r);
    let se_rp = se_models(&rp);
    let syms = r.symbols();
    let show = |p: SePair| p.show(syms);
    let mut out: [Option<String>; 5] = Default::default();

    // (a) X ⊨ R^Y implies X∖A ⊨ (R∖A)^(Y∖A)
    'a: for y in w.subsets() {
        for x in y.subsets() {
            if r.reduct_satisfied(x, y) && !rp.reduct_satisfied(x - a, y - a) {
                out[0] = Some(show(SePair::new(x, y)));
                break 'a;
            }
        }
    }
    // (b)
    'b: for q in se_rp.pairs() {
        for ap in a.subsets() {
            let t = q.there | ap;
            if se_r.contains_total(t)
                && !ap
                    .subsets()
                    .any(|app| se_r.contains(&SePair::new(q.here | app, t)))
            {
                out[1] = Some(format!("{} with A' = {}", show(*q), syms.show(ap)));
                break 'b;
            }
        }
    }
    // (c)
    if let Some(q) = se_r
        .pairs()
        .iter()
        .find(|q| !se_r.contains(&SePair::new(q.here | (q.there & a), q.there)))
    {
        out[2] = Some(show(*q));
    }
    // (d)
    if let Some(y) = se_r.totals().find(|&y| !se_r.contains_total(y | a)) {
        out[3] = Some(show(SePair::total(y)));
    }
    // (e)
    if let Some(y) = se_rp
        .totals()
        .find(|&y| !a.subsets().any(|ap| se_r.contains_total(y | ap)))
    {
        out[4] = Some(show(SePair::total(y)));
    }
    out
}
