//! Permutations in one-line notation.

use crate::partition::Partition;

/// A permutation of {0, .., n-1}; `p[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&i| !std::mem::replace(&mut seen[i as usize], true))
        });
        Perm(images)
    }

    /// Builds the permutation whose cycles are consecutive runs of `order`
    /// with the lengths in `cycle_type`.
    pub fn from_cycles(order: &[u8], cycle_type: &Partition) -> Self {
        let mut images = vec![0u8; order.len()];
        let mut start = 0;
        for &len in cycle_type.parts() {
            for j in 0..len {
                images[order[start + j] as usize] = order[start + (j + 1) % len];
            }
            start += len;
        }
        Perm(images)
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            lens.push(len);
        }
        Partition::from_unsorted(lens)
    }

    /// Direct sum: `self` on the first block, `other` shifted onto the next.
    pub fn concat(&self, other: &Perm) -> Perm {
        let shift = self.0.len() as u8;
        let mut images = self.0.clone();
        images.extend(other.0.iter().map(|&i| i + shift));
        Perm(images)
    }
}

/// All n! permutations, in lexicographic order of their one-line form.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(Perm(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}
