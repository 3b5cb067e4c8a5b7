//! Finite groups on the element set `{0, …, n−1}`.

mod cayley;
mod characters;

pub use cayley::CayleyFile;
pub use characters::CharacterTable;

use thiserror::Error;

/// Largest order the built-in constructors produce. Dense operators on
/// `H ⊗ H` are then at most `576 × 576`.
pub const MAX_BUILTIN_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatinLine {
    Row,
    Column,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{constructor}: parameter {value} out of range ({reason})")]
    InvalidParameter {
        constructor: &'static str,
        value: usize,
        reason: &'static str,
    },
    #[error("group order {order} exceeds the built-in cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("empty Cayley table")]
    EmptyTable,
    #[error("declared order {declared} but the table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedTable { row: usize, expected: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is outside 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not a Latin square: {line:?} {index} repeats value {value} (at ({row}, {col}))")]
    NotLatinSquare {
        line: LatinLine,
        index: usize,
        value: usize,
        row: usize,
        col: usize,
    },
    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: usize },
    #[error("not associative: ({a}·{b})·{c} = {left} but {a}·({b}·{c}) = {right}")]
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },
    #[error("group is not abelian: {a}·{b} ≠ {b}·{a}")]
    NonAbelianInput { a: usize, b: usize },
    #[error("malformed Cayley table file: {0}")]
    Parse(String),
}

/// Index of an element of some [`FiniteGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A validated finite group. The identity is discovered from the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1 is in range")
    }

    /// `ℤ/n` with `a·b = a + b mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        check_builtin("cyclic", n, n)?;
        Ok(Self::from_fn_unchecked(n, |a, b| (a + b) % n))
    }

    /// Dihedral group of order `2m`. Index `f·m + k` stands for `r^k s^f`,
    /// with `r^k s^f · r^l s^g = r^(k + (−1)^f l) s^(f+g)`.
    pub fn dihedral(m: usize) -> Result<Self, GroupError> {
        check_builtin("dihedral", m, 2 * m)?;
        Ok(Self::from_fn_unchecked(2 * m, |x, y| {
            let (f, k) = (x / m, x % m);
            let (g, l) = (y / m, y % m);
            let rot = if f == 0 { (k + l) % m } else { (k + m - l) % m };
            ((f + g) % 2) * m + rot
        }))
    }

    /// Symmetric group on `k ≤ 4` letters; elements are the permutations in
    /// lexicographic order and `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if !(1..=4).contains(&k) {
            return Err(GroupError::InvalidParameter {
                constructor: "symmetric",
                value: k,
                reason: "need 1 ≤ k ≤ 4",
            });
        }
        let perms = permutations(k);
        let n = perms.len();
        Ok(Self::from_fn_unchecked(n, |a, b| {
            let composed: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            perms.binary_search(&composed).expect("closed under composition")
        }))
    }

    /// `G × H` with index `g·|H| + h`.
    pub fn direct_product(g: &Self, h: &Self) -> Result<Self, GroupError> {
        let n = g.order * h.order;
        if n > MAX_BUILTIN_ORDER {
            return Err(GroupError::OrderTooLarge {
                order: n,
                cap: MAX_BUILTIN_ORDER,
            });
        }
        let m = h.order;
        Ok(Self::from_fn_unchecked(n, |x, y| g.mult(x / m, y / m) * m + h.mult(x % m, y % m)))
    }

    /// Table from a closure the caller guarantees to be a group law.
    fn from_fn_unchecked(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut mult = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mult.push(f(a, b));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e * n + a] == a))
            .expect("group law has identity");
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mult[a * n + b] == identity).expect("group law has inverses"))
            .collect();
        Self {
            order: n,
            mult,
            inv,
            identity,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element(&self, index: usize) -> Option<GroupElement> {
        (index < self.order).then_some(GroupElement(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    /// Multiplication table as rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mult(x, a);
            k += 1;
        }
        k
    }

    /// First non-commuting pair, if any.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order;
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mult(a, b) != self.mult(b, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn characters(&self) -> Result<CharacterTable, GroupError> {
        CharacterTable::new(self)
    }
}

fn check_builtin(constructor: &'static str, value: usize, order: usize) -> Result<(), GroupError> {
    if value == 0 {
        return Err(GroupError::InvalidParameter {
            constructor,
            value,
            reason: "must be at least 1",
        });
    }
    if order > MAX_BUILTIN_ORDER {
        return Err(GroupError::OrderTooLarge {
            order,
            cap: MAX_BUILTIN_ORDER,
        });
    }
    Ok(())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..k {
            if !prefix.contains(&v) {
                prefix.push(v);
                extend(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(k), k, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_one_is_trivial() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn cyclic_four_adds_mod_four() {
        assert_eq!(FiniteGroup::cyclic(4).unwrap().mult(3, 2), 1);
    }

    #[test]
    fn symmetric_three_is_nonabelian() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn dihedral_relations() {
        let m = 4;
        let g = FiniteGroup::dihedral(m).unwrap();
        let (r, s) = (1, m);
        assert_eq!(g.element_order(r), m);
        assert_eq!(g.element_order(s), 2);
        // s r s = r⁻¹
        assert_eq!(g.mult(g.mult(s, r), s), g.inv(r));
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(FiniteGroup::cyclic(0), Err(GroupError::InvalidParameter { .. })));
        assert!(matches!(FiniteGroup::cyclic(25), Err(GroupError::OrderTooLarge { .. })));
        assert!(matches!(FiniteGroup::dihedral(13), Err(GroupError::OrderTooLarge { .. })));
        assert!(FiniteGroup::symmetric(5).is_err());
        assert!(FiniteGroup::symmetric(0).is_err());
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert!(FiniteGroup::direct_product(&s4, &FiniteGroup::cyclic(2).unwrap()).is_err());
    }

    #[test]
    fn direct_product_of_cyclics() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let p = FiniteGroup::direct_product(&c2, &c3).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert!(p.elements().any(|x| p.element_order(x.index()) == 6));
    }

    #[test]
    fn element_lookup() {
        let g = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(g.element(2).map(GroupElement::index), Some(2));
        assert!(g.element(3).is_none());
    }
}
