use std::fmt::Write as _;

use crate::atoms::{AtomSet, Symbols};
use crate::syntax::{Program, Rule};

/// Renders a program in the file grammar, one rule per line.
///
/// A `#universe` directive is emitted first when the universe holds atoms
/// that no rule mentions, so that re-parsing recovers the same universe.
pub fn format_program(p: &Program) -> String {
    let mut out = String::new();
    let syms = p.symbols();
    if p.universe() != p.occurring_atoms() {
        let _ = writeln!(out, "#universe {}.", syms.names_of(p.universe()).join(", "));
    }
    for r in p.rules() {
        out.push_str(&format_rule(syms, r));
        out.push('\n');
    }
    out
}

pub(crate) fn format_rule(syms: &Symbols, r: &Rule) -> String {
    let names = |s: AtomSet| syms.names_of(s);
    let head = names(r.head).join(" | ");
    let mut body: Vec<String> = names(r.pos).into_iter().map(str::to_string).collect();
    body.extend(names(r.neg).into_iter().map(|n| format!("not {n}")));
    body.extend(names(r.dneg).into_iter().map(|n| format!("not not {n}")));
    match (head.is_empty(), body.is_empty()) {
        (false, true) => format!("{head}."),
        (false, false) => format!("{head} :- {}.", body.join(", ")),
        (true, false) => format!(":- {}.", body.join(", ")),
        (true, true) => ":- .".to_string(),
    }
}
