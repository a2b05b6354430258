//! Orbit-sum bases of the Kronecker algebra (diagonal conjugation on pairs)
//! and of the LR algebra (conjugation by S_m × S_n inside S_{m+n}).

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{group_algebra, tensor_algebra, Element, Q};
use crate::error::{Error, Result};
use crate::perm::{all_perms, Perm};

fn conj(g: &Perm, s: &Perm) -> Perm {
    g.compose(s).compose(&g.inverse())
}

fn diagonal_orbit(a: &Perm, b: &Perm) -> BTreeSet<(Perm, Perm)> {
    all_perms(a.degree()).iter().map(|g| (conj(g, a), conj(g, b))).collect()
}

/// Sum of the distinct pairs (γσ1γ⁻¹, γσ2γ⁻¹), γ ∈ S_n.
pub fn diagonal_orbit_sum(a: &Perm, b: &Perm) -> Result<Element> {
    if a.degree() != b.degree() {
        return Err(Error::InvalidArgument("pair of permutations of different degree".into()));
    }
    let alg = tensor_algebra(a.degree())?;
    let mut e = Element::zero(&alg);
    for (x, y) in diagonal_orbit(a, b) {
        e.coeffs[alg.pair_index(&x, &y)] = Q::one();
    }
    Ok(e)
}

/// One orbit sum per diagonal-conjugation orbit on S_n × S_n.
pub fn diagonal_orbits(n: usize) -> Result<Vec<Element>> {
    let alg = tensor_algebra(n)?;
    let perms = all_perms(n);
    let mut seen = vec![false; alg.dim()];
    let mut out = Vec::new();
    for a in &perms {
        for b in &perms {
            if seen[alg.pair_index(a, b)] {
                continue;
            }
            let e = diagonal_orbit_sum(a, b)?;
            for (i, c) in e.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    seen[i] = true;
                }
            }
            out.push(e);
        }
    }
    Ok(out)
}

fn subgroup(m: usize, n: usize) -> Vec<Perm> {
    let left = all_perms(m);
    let right = all_perms(n);
    left.iter().flat_map(|a| right.iter().map(move |b| a.concat(b))).collect()
}

/// Sum of the distinct conjugates γσγ⁻¹, γ ∈ S_m × S_n ⊂ S_{m+n}.
pub fn subgroup_orbit_sum(s: &Perm, m: usize) -> Result<Element> {
    let total = s.degree();
    if m > total {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds degree {total}")));
    }
    let alg = group_algebra(total)?;
    let mut e = Element::zero(&alg);
    for g in subgroup(m, total - m) {
        e.coeffs[alg.index_of(&conj(&g, s))] = Q::one();
    }
    Ok(e)
}

/// One orbit sum per S_m × S_n conjugation orbit on S_{m+n}.
pub fn subgroup_orbits(m: usize, n: usize) -> Result<Vec<Element>> {
    let alg = group_algebra(m + n)?;
    let mut seen = vec![false; alg.dim()];
    let mut out = Vec::new();
    for s in all_perms(m + n) {
        if seen[alg.index_of(&s)] {
            continue;
        }
        let e = subgroup_orbit_sum(&s, m)?;
        for (i, c) in e.coeffs().iter().enumerate() {
            if !c.is_zero() {
                seen[i] = true;
            }
        }
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn burnside_pairs(n: usize) -> usize {
        partitions(n).iter().map(|mu| mu.z()).sum::<BigInt>().to_usize().unwrap()
    }

    #[test]
    fn diagonal_orbit_counts() {
        for n in 1..=4 {
            assert_eq!(diagonal_orbits(n).unwrap().len(), burnside_pairs(n), "n = {n}");
        }
    }

    #[test]
    fn subgroup_orbit_counts() {
        // Burnside: average number of fixed points of conjugation.
        for total in 1..=5 {
            for m in 0..=total {
                let group = subgroup(m, total - m);
                let fixed: usize = group
                    .iter()
                    .map(|g| all_perms(total).iter().filter(|s| &conj(g, s) == *s).count())
                    .sum();
                assert_eq!(subgroup_orbits(m, total - m).unwrap().len(), fixed / group.len());
            }
        }
    }

    #[test]
    fn orbit_sums_are_conjugation_invariant() {
        let a = Perm::from_images(vec![1, 0, 2, 3]);
        let b = Perm::from_images(vec![1, 2, 3, 0]);
        let e = diagonal_orbit_sum(&a, &b).unwrap();
        let alg = e.algebra().clone();
        for g in all_perms(4) {
            let gg = Element::perm(&group_algebra(4).unwrap(), &g).coproduct().unwrap();
            let gi = Element::perm(&group_algebra(4).unwrap(), &g.inverse()).coproduct().unwrap();
            assert_eq!(&(&gg * &e) * &gi, e);
        }
        assert!(Element::zero(&alg).is_zero());
    }
}
