//! Characters of S_n without Murnaghan–Nakayama: permutation characters
//! (fixed row tabloids) are unitriangular in the irreducibles via Kostka
//! numbers, so the irreducible characters follow by back substitution.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::{group_algebra, Element, Q};
use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};
use crate::perm::all_perms;

/// Number of row tabloids of shape lambda fixed by a permutation of cycle
/// type mu: ways to send each (labelled) cycle to a row so rows fill exactly.
pub fn permutation_character(lambda: &Partition, mu: &Partition) -> i128 {
    fn go(cycles: &[usize], room: &mut [usize]) -> i128 {
        let Some((&c, rest)) = cycles.split_first() else {
            return i128::from(room.iter().all(|&r| r == 0));
        };
        let mut total = 0;
        for i in 0..room.len() {
            if room[i] >= c {
                room[i] -= c;
                total += go(rest, room);
                room[i] += c;
            }
        }
        total
    }
    go(mu.parts(), &mut lambda.parts().to_vec())
}

/// Horizontal strips of the given size that can be added to `inner` while
/// staying inside `outer`.
fn horizontal_strips(inner: &[usize], outer: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, left: usize, inner: &[usize], outer: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == outer.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let base = inner.get(i).copied().unwrap_or(0);
        // A horizontal strip never puts two boxes in one column: row i may
        // grow at most up to the old length of row i-1.
        let cap = if i == 0 { outer[0] } else { inner[i - 1].min(outer[i]) };
        for new in base..=cap.max(base) {
            if new - base > left || new > outer[i] {
                break;
            }
            cur.push(new);
            go(i + 1, left - (new - base), inner, outer, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, size, inner, outer, &mut Vec::new(), &mut out);
    out
}

/// Semistandard tableaux of shape lambda and content mu.
pub fn kostka(lambda: &Partition, mu: &Partition) -> i128 {
    fn go(shape: &[usize], target: &[usize], content: &[usize]) -> i128 {
        let Some((&c, rest)) = content.split_first() else {
            return i128::from(shape == target);
        };
        horizontal_strips(shape, target, c)
            .into_iter()
            .map(|next| go(&next, target, rest))
            .sum()
    }
    if lambda.weight() != mu.weight() {
        return 0;
    }
    go(&vec![0; lambda.len()], lambda.parts(), mu.parts())
}

/// Full character table of S_n obtained by Kostka inversion.
#[derive(Debug)]
pub struct OracleCharacters {
    labels: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// values[r][mu]
    values: Vec<Vec<i128>>,
}

impl OracleCharacters {
    pub fn new(n: usize) -> Self {
        let labels = partitions(n);
        let index: HashMap<Partition, usize> = labels.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let len = labels.len();
        let mut values = vec![vec![0i128; len]; len];
        // pi^lam = sum_{nu ⊵ lam} K_{nu lam} chi^nu; dominating shapes come
        // first in reverse-lexicographic order.
        for (a, lam) in labels.iter().enumerate() {
            for (c, mu) in labels.iter().enumerate() {
                let mut v = permutation_character(lam, mu);
                for (b, nu) in labels.iter().enumerate().take(a) {
                    v -= kostka(nu, lam) * values[b][c];
                }
                values[a][c] = v;
            }
        }
        OracleCharacters { labels, index, values }
    }

    pub fn shared(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OracleCharacters>>>> = OnceLock::new();
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        map.entry(n).or_insert_with(|| Arc::new(Self::new(n))).clone()
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn get(&self, r: &Partition, mu: &Partition) -> i128 {
        self.values[self.index[r]][self.index[mu]]
    }

    pub fn dim(&self, r: &Partition) -> i128 {
        self.get(r, &Partition::column(r.weight()))
    }
}

pub fn oracle_character(r: &Partition, mu: &Partition) -> Result<i128> {
    r.ensure_weight(mu.weight())?;
    Ok(OracleCharacters::shared(r.weight()).get(r, mu))
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// P_R = (d_R/n!) sum_σ chi^R(σ) σ as an element of C(S_n).
pub fn projector(r: &Partition) -> Result<Element> {
    let n = r.weight();
    let alg = group_algebra(n)?;
    let chars = OracleCharacters::shared(n);
    let d = chars.dim(r);
    let order = factorial(n);
    let coeffs = alg
        .perms()
        .iter()
        .map(|p| Q::new(d * chars.get(r, &p.cycle_type()), order))
        .collect();
    Ok(Element::from_coeffs(&alg, coeffs))
}

/// Largest n for the element-wise Kronecker oracle.
pub const KRONECKER_ORACLE_MAX_N: usize = 5;

/// Multiplicity of the trivial representation in R1 ⊗ R2 ⊗ R3, summing
/// characters over every element of S_n.
pub fn kronecker_oracle(r1: &Partition, r2: &Partition, r3: &Partition) -> Result<i128> {
    let n = r1.weight();
    r1.ensure_weight(r2.weight())?;
    r1.ensure_weight(r3.weight())?;
    if n > KRONECKER_ORACLE_MAX_N {
        return Err(Error::Capability {
            what: "element-wise Kronecker oracle",
            limit: KRONECKER_ORACLE_MAX_N,
            got: n,
        });
    }
    let chars = OracleCharacters::shared(n);
    let total: i128 = all_perms(n)
        .iter()
        .map(|p| {
            let mu = p.cycle_type();
            chars.get(r1, &mu) * chars.get(r2, &mu) * chars.get(r3, &mu)
        })
        .sum();
    let q = Q::new(total, factorial(n));
    if !q.is_integer() || q < Q::zero() {
        return Err(Error::Consistency(format!("oracle multiplicity {q} for {r1};{r2};{r3}")));
    }
    Ok(q.to_integer())
}
