use std::collections::HashSet;
use std::fmt;

use crate::atoms::{is_identifier, AtomSet, Symbols};
use crate::error::{Error, Result};
use crate::syntax::{Program, Rule};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: String,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: &str) -> Self {
        Literal {
            var: var.to_string(),
            positive: true,
        }
    }

    pub fn neg(var: &str) -> Self {
        Literal {
            var: var.to_string(),
            positive: false,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

/// `∀U ∃V ∀W φ` with `φ` a disjunction of 3-literal conjunctions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QbfInstance {
    pub u: Vec<String>,
    pub v: Vec<String>,
    pub w: Vec<String>,
    pub terms: Vec<[Literal; 3]>,
}

impl QbfInstance {
    pub fn new(u: &[&str], v: &[&str], w: &[&str], terms: Vec<[Literal; 3]>) -> Result<Self> {
        let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        let phi = QbfInstance {
            u: own(u),
            v: own(v),
            w: own(w),
            terms,
        };
        phi.validate(0)?;
        Ok(phi)
    }

    fn variables(&self) -> impl Iterator<Item = &String> {
        self.u.iter().chain(&self.v).chain(&self.w)
    }

    fn validate(&self, line: usize) -> Result<()> {
        let err = |message: String| Error::QbfParse { line, message };
        let mut seen = HashSet::new();
        for x in self.variables() {
            if !is_identifier(x) {
                return Err(err(format!("invalid variable name `{x}`")));
            }
            if !seen.insert(x.as_str()) {
                return Err(err(format!("variable `{x}` declared twice")));
            }
        }
        for t in &self.terms {
            for l in t {
                if !seen.contains(l.var.as_str()) {
                    return Err(err(format!("undeclared variable `{}`", l.var)));
                }
            }
        }
        Ok(())
    }

    /// The instance in the file format.
    pub fn render(&self) -> String {
        let mut out = format!("forall {};\n", self.u.join(" "));
        out += &format!("exists {};\n", self.v.join(" "));
        out += &format!("forall {};\n", self.w.join(" "));
        for t in &self.terms {
            out += &format!("term {} {} {};\n", t[0], t[1], t[2]);
        }
        out
    }

    fn holds_at(&self, value: &dyn Fn(&str) -> bool) -> bool {
        self.terms
            .iter()
            .any(|t| t.iter().all(|l| value(&l.var) == l.positive))
    }
}

/// Parses `forall u1 u2; exists v1; forall w1; term u1 -v1 w1; ...`.
///
/// Statements end with `;` and may share lines. The first `forall` block is
/// `U`, the `exists` block `V`, the second `forall` block `W`; blocks may be
/// omitted or empty. `%` starts a comment.
pub fn parse_qbf(text: &str) -> Result<QbfInstance> {
    let mut phi = QbfInstance::default();
    let mut foralls = 0;
    let mut seen_exists = false;
    let mut last_line = 1;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        last_line = line_no;
        let line = raw.split('%').next().unwrap_or("");
        let stmts: Vec<&str> = line.split(';').collect();
        let (complete, tail) = stmts.split_at(stmts.len() - 1);
        if !tail[0].trim().is_empty() {
            return Err(Error::QbfParse {
                line: line_no,
                message: format!("statement `{}` lacks a terminating `;`", tail[0].trim()),
            });
        }
        for stmt in complete {
            let mut words = stmt.split_whitespace();
            let Some(kw) = words.next() else { continue };
            let args: Vec<String> = words.map(str::to_string).collect();
            let err = |message: String| Error::QbfParse {
                line: line_no,
                message,
            };
            match kw {
                "forall" => {
                    match (foralls, seen_exists) {
                        (0, false) => phi.u = args,
                        (0, true) | (1, _) => phi.w = args,
                        _ => return Err(err("more than two forall blocks".into())),
                    }
                    foralls = if seen_exists { 2 } else { foralls + 1 };
                }
                "exists" => {
                    if seen_exists || foralls > 1 {
                        return Err(err("exists block out of place".into()));
                    }
                    seen_exists = true;
                    phi.v = args;
                }
                "term" => {
                    if args.len() != 3 {
                        return Err(err(format!("term has {} literals, expected 3", args.len())));
                    }
                    let lits: Vec<Literal> = args
                        .iter()
                        .map(|a| match a.strip_prefix('-') {
                            Some(v) => Literal::neg(v),
                            None => Literal::pos(a),
                        })
                        .collect();
                    phi.terms.push([lits[0].clone(), lits[1].clone(), lits[2].clone()]);
                }
                other => return Err(err(format!("unknown statement `{other}`"))),
            }
        }
    }
    phi.validate(last_line)?;
    Ok(phi)
}

/// Brute-force truth value of `∀U ∃V ∀W φ`.
pub fn qbf_eval(phi: &QbfInstance) -> bool {
    let vars: Vec<&String> = phi.variables().collect();
    let (nu, nv, nw) = (phi.u.len(), phi.v.len(), phi.w.len());
    let index = |name: &str| vars.iter().position(|v| v.as_str() == name).expect("validated");
    let eval = |bits: u32| phi.holds_at(&|name| bits >> index(name) & 1 == 1);
    (0..1u32 << nu).all(|u| {
        (0..1u32 << nv).any(|v| {
            (0..1u32 << nw).all(|w| eval(u | v << nu | w << (nu + nv)))
        })
    })
}

/// The program pair produced from a QBF instance.
#[derive(Clone, Debug)]
pub struct QbfReduction {
    pub p: Program,
    pub q: Program,
    /// `V ∪ Ṽ ∪ W ∪ W̃ ∪ {s}`.
    pub a: AtomSet,
}

/// Builds `P`, `Q` and `A` with `AS(P)_{|Ā} = AS(Q)` iff the instance is true.
///
/// Every variable `x` gets a complement copy `x̃`; `P` guesses all variables,
/// saturates `W` on the fresh atom `s`, derives `s` from each term (negative
/// literals read as the copy) and requires `s`. `Q` guesses `U` only.
pub fn qbf_reduce(phi: &QbfInstance) -> Result<QbfReduction> {
    phi.validate(0)?;
    let vars: Vec<String> = phi.variables().cloned().collect();
    let base = Symbols::new(vars.iter().map(String::as_str))?;
    let mut table = base.clone();
    let mut copy = Vec::new();
    for x in &vars {
        let c = table.fresh_name(&format!("{x}_n"));
        table = table.extended([c.clone()])?;
        copy.push(c);
    }
    let s_name = table.fresh_name("s");
    let syms = table.extended([s_name.clone()])?;
    let at = |n: &str| syms.index_of(n).expect("interned");
    let one = |n: &str| AtomSet::singleton(at(n));
    let copy_of = |x: &str| {
        let i = vars.iter().position(|v| v == x).expect("validated");
        one(&copy[i])
    };
    let s = one(&s_name);

    let mut rules = Vec::new();
    for x in &vars {
        rules.push(Rule::fact(one(x) | copy_of(x)));
    }
    for w in &phi.w {
        rules.push(Rule::new(one(w), s, AtomSet::EMPTY, AtomSet::EMPTY));
        rules.push(Rule::new(copy_of(w), s, AtomSet::EMPTY, AtomSet::EMPTY));
        rules.push(Rule::new(s, one(w) | copy_of(w), AtomSet::EMPTY, AtomSet::EMPTY));
    }
    for t in &phi.terms {
        let body = t.iter().fold(AtomSet::EMPTY, |acc, l| {
            acc | if l.positive { one(&l.var) } else { copy_of(&l.var) }
        });
        rules.push(Rule::new(s, body, AtomSet::EMPTY, AtomSet::EMPTY));
    }
    rules.push(Rule::constraint(AtomSet::EMPTY, s, AtomSet::EMPTY));
    let p = Program::new(syms.clone(), syms.all(), rules)?;

    let mut q_rules = Vec::new();
    let mut q_universe = AtomSet::EMPTY;
    for u in &phi.u {
        let head = one(u) | copy_of(u);
        q_universe = q_universe | head;
        q_rules.push(Rule::fact(head));
    }
    let q = Program::new(syms.clone(), q_universe, q_rules)?;

    let a = phi
        .v
        .iter()
        .chain(&phi.w)
        .fold(s, |acc, x| acc | one(x) | copy_of(x));
    Ok(QbfReduction { p, q, a })
}
