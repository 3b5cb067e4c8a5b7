use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{FiniteGroup, GroupError};
use crate::linalg::ComplexMatrix;

/// Character table of a finite abelian group.
///
/// Every character takes values in the `N`-th roots of unity, `N` the
/// exponent of the group, so characters are stored exactly as integer
/// exponents `e` with `χ(x) = exp(2πi·e(x)/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    exponent: usize,
    exponents: Vec<Vec<usize>>,
}

impl CharacterTable {
    /// Enumerates all homomorphisms into the circle by choosing a value on
    /// each of a greedily picked generating set and propagating.
    pub fn new(group: &FiniteGroup) -> Result<Self, GroupError> {
        if let Some((a, b)) = group.noncommuting_pair() {
            return Err(GroupError::NonAbelianInput { a, b });
        }
        let n = group.order();
        let exponent = (0..n).map(|a| group.element_order(a)).fold(1, lcm);

        let mut generators = Vec::new();
        let mut generated: BTreeSet<usize> = BTreeSet::from([group.identity()]);
        while generated.len() < n {
            let g = (0..n).find(|x| !generated.contains(x)).expect("subgroup is proper");
            generators.push(g);
            generated = closure(group, &generators);
        }

        let orders: Vec<usize> = generators.iter().map(|&g| group.element_order(g)).collect();
        let mut choice = vec![0usize; generators.len()];
        let mut exponents = Vec::with_capacity(n);
        loop {
            let values: Vec<usize> = choice.iter().zip(&orders).map(|(&j, &o)| j * (exponent / o)).collect();
            if let Some(e) = propagate(group, &generators, &values, exponent) {
                exponents.push(e);
            }
            // odometer over the generator value choices
            let mut slot = 0;
            loop {
                if slot == choice.len() {
                    debug_assert_eq!(exponents.len(), n);
                    return Ok(Self { exponent, exponents });
                }
                choice[slot] += 1;
                if choice[slot] < orders[slot] {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
        }
    }

    pub fn order(&self) -> usize {
        self.exponents.len()
    }

    /// `χ_j(x)`.
    pub fn value(&self, j: usize, x: usize) -> Complex64 {
        let e = self.exponents[j][x] as f64 / self.exponent as f64;
        Complex64::from_polar(1.0, TAU * e)
    }

    /// Table as a matrix with rows indexed by characters.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.order();
        ComplexMatrix::from_fn(n, n, |j, x| self.value(j, x))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn closure(group: &FiniteGroup, generators: &[usize]) -> BTreeSet<usize> {
    let mut set = BTreeSet::from([group.identity()]);
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for &g in generators {
            let y = group.mult(x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Extends generator exponents to the whole group, or `None` when the
/// choice is not a homomorphism.
fn propagate(group: &FiniteGroup, generators: &[usize], values: &[usize], modulus: usize) -> Option<Vec<usize>> {
    let n = group.order();
    let mut e: Vec<Option<usize>> = vec![None; n];
    e[group.identity()] = Some(0);
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        let ex = e[x].expect("visited");
        for (&g, &v) in generators.iter().zip(values) {
            let y = group.mult(x, g);
            let ey = (ex + v) % modulus;
            match e[y] {
                None => {
                    e[y] = Some(ey);
                    frontier.push(y);
                }
                Some(prev) if prev != ey => return None,
                Some(_) => {}
            }
        }
    }
    e.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_characters() {
        let t = FiniteGroup::cyclic(2).unwrap().characters().unwrap();
        let m = t.matrix();
        let expected = [[1.0, 1.0], [1.0, -1.0]];
        for j in 0..2 {
            for x in 0..2 {
                assert!((m.get(j, x) - Complex64::new(expected[j][x], 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn cyclic_three_roots_of_unity() {
        let t = FiniteGroup::cyclic(3).unwrap().characters().unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let expected = Complex64::from_polar(1.0, TAU * (j * k) as f64 / 3.0);
                assert!((t.value(j, k) - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn nonabelian_rejected() {
        let err = FiniteGroup::symmetric(3).unwrap().characters().unwrap_err();
        assert!(matches!(err, GroupError::NonAbelianInput { .. }));
    }

    #[test]
    fn klein_four_has_four_real_characters() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::direct_product(&c2, &c2).unwrap();
        let m = v4.characters().unwrap().matrix();
        assert!(m.as_slice().iter().all(|z| z.im.abs() < 1e-15));
    }
}
