//! Atom interning and fixed-width atom sets.
//!
//! Every program carries a [`Symbols`] table that maps atom names to bit
//! positions. Sets of atoms (interpretations, the removal set, the context
//! vocabulary, ...) are plain [`AtomSet`] bitmasks over that table, so all set
//! algebra is a handful of integer operations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Hard upper bound on the number of symbols a table may hold.
///
/// User-facing universes are capped lower (see [`AtomLimit`]); the slack is
/// used for auxiliary atoms introduced during context verification.
pub const MAX_SYMBOLS: usize = 32;

/// Default cap on the size of a program universe.
pub const DEFAULT_ATOM_LIMIT: usize = 16;

/// Largest cap a caller may configure.
pub const HARD_ATOM_LIMIT: usize = 24;

/// Cap on universe size. Enumeration over SE-interpretations is `3^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AtomLimit(usize);

impl AtomLimit {
    pub fn new(limit: usize) -> Result<Self, Error> {
        if limit > HARD_ATOM_LIMIT {
            return Err(Error::AtomLimit {
                requested: limit,
                max: HARD_ATOM_LIMIT,
            });
        }
        if limit > DEFAULT_ATOM_LIMIT {
            log::warn!(
                "atom limit raised to {limit}; exhaustive enumeration may take a long time"
            );
        }
        Ok(AtomLimit(limit))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl Default for AtomLimit {
    fn default() -> Self {
        AtomLimit(DEFAULT_ATOM_LIMIT)
    }
}

/// A set of atoms, encoded as a bitmask over a [`Symbols`] table.
///
/// The numeric encoding doubles as the canonical order: sets are compared as
/// unsigned integers.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(u32);

/// Interpretations are atom sets; the alias documents the role.
pub type Interpretation = AtomSet;

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        AtomSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_SYMBOLS);
        AtomSet(1 << index)
    }

    /// The set `{0, .., n-1}`.
    pub fn prefix(n: usize) -> Self {
        if n >= 32 {
            AtomSet(u32::MAX)
        } else {
            AtomSet((1u32 << n) - 1)
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_SYMBOLS && self.0 & (1 << index) != 0
    }

    pub fn insert(&mut self, index: usize) {
        self.0 |= 1 << index;
    }

    pub fn remove(&mut self, index: usize) {
        self.0 &= !(1 << index);
    }

    pub fn with(self, index: usize) -> Self {
        AtomSet(self.0 | (1 << index))
    }

    pub fn union(self, other: AtomSet) -> Self {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> Self {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: AtomSet) -> Self {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: AtomSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: AtomSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: AtomSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, ascending by numeric encoding, `∅` first and
    /// `self` last.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl std::ops::BitOr for AtomSet {
    type Output = AtomSet;
    fn bitor(self, rhs: AtomSet) -> AtomSet {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for AtomSet {
    type Output = AtomSet;
    fn bitand(self, rhs: AtomSet) -> AtomSet {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for AtomSet {
    type Output = AtomSet;
    fn sub(self, rhs: AtomSet) -> AtomSet {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for AtomSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = AtomSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Iterator over the submasks of a mask in increasing numeric order.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = AtomSet;

    fn next(&mut self) -> Option<AtomSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // Increment within the free bits of the mask.
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(AtomSet(cur))
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Table {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// An immutable, cheaply clonable table of atom names.
///
/// Atom `i` of the table is bit `i` of every [`AtomSet`] built against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbols(Arc<Table>);

impl Default for Symbols {
    fn default() -> Self {
        Symbols::new(Vec::<String>::new()).expect("empty table")
    }
}

impl Symbols {
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = Table {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::InvalidAtomName(name));
            }
            if table.index.contains_key(&name) {
                return Err(Error::DuplicateAtom(name));
            }
            if table.names.len() == MAX_SYMBOLS {
                return Err(Error::AtomLimit {
                    requested: MAX_SYMBOLS + 1,
                    max: MAX_SYMBOLS,
                });
            }
            table.index.insert(name.clone(), table.names.len());
            table.names.push(name);
        }
        Ok(Symbols(Arc::new(table)))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    /// Every symbol of the table.
    pub fn all(&self) -> AtomSet {
        AtomSet::prefix(self.len())
    }

    /// Resolves names to a set; unknown names are an error.
    pub fn set_of<I, S>(&self, names: I) -> Result<AtomSet, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| {
                let n = n.as_ref();
                self.index_of(n)
                    .ok_or_else(|| Error::UnknownAtom(n.to_string()))
            })
            .collect()
    }

    /// Member names of `set`, sorted by name.
    pub fn sorted_names(&self, set: AtomSet) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|i| self.name(i).to_string()).collect();
        v.sort();
        v
    }

    /// Member names of `set` in table order.
    pub fn names_of(&self, set: AtomSet) -> Vec<&str> {
        set.iter().map(|i| self.name(i)).collect()
    }

    /// Compact rendering in the style `{a,b}`, members in table order.
    pub fn show(&self, set: AtomSet) -> String {
        format!("{{{}}}", self.names_of(set).join(","))
    }

    /// A new table holding these symbols followed by any of `extra` not
    /// already present. Existing indices are unchanged.
    pub fn extended<I, S>(&self, extra: I) -> Result<Symbols, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = self.0.names.clone();
        for n in extra {
            let n = n.into();
            if self.index_of(&n).is_none() && !names.contains(&n) {
                names.push(n);
            }
        }
        if names.len() == self.len() {
            return Ok(self.clone());
        }
        Symbols::new(names)
    }

    /// A name starting with `base` that is not in the table.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}{k}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }

    /// Maps a set over `self` to the same atoms in `target`, by name.
    pub fn translate(&self, set: AtomSet, target: &Symbols) -> Result<AtomSet, Error> {
        if Arc::ptr_eq(&self.0, &target.0) {
            return Ok(set);
        }
        set.iter()
            .map(|i| {
                target
                    .index_of(self.name(i))
                    .ok_or_else(|| Error::UnknownAtom(self.name(i).to_string()))
            })
            .collect()
    }

    /// True when both handles refer to the same table, or to tables with
    /// identical contents.
    pub fn same(&self, other: &Symbols) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

/// `[a-zA-Z_][a-zA-Z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
