//! Characters of S_n by the Murnaghan–Nakayama rule, dimensions by the
//! hook-length formula, and lazily-filled character tables.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::{partitions, Partition};

/// Beta-numbers (first-column hook lengths) of `r` padded to `len` rows.
fn beta_set(r: &Partition, len: usize) -> Vec<usize> {
    (0..len)
        .map(|i| r.parts().get(i).copied().unwrap_or(0) + (len - 1 - i))
        .collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    Partition::from_unsorted(beta.iter().enumerate().map(|(i, b)| b - (len - 1 - i)).collect())
}

/// All ways to strip a rim hook (border strip) of length `k` from `r`,
/// with the sign (-1)^{height} of each strip.
pub fn rim_hooks(r: &Partition, k: usize) -> Vec<(Partition, i32)> {
    if k == 0 || k > r.weight() {
        return Vec::new();
    }
    let len = r.len();
    let beta = beta_set(r, len);
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        out.push((from_beta_set(moved), if crossed % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// Hook lengths of every box of the diagram, row by row.
pub fn hook_lengths(r: &Partition) -> Vec<usize> {
    let conj = r.conjugate();
    let mut hooks = Vec::with_capacity(r.weight());
    for (i, &row) in r.parts().iter().enumerate() {
        for j in 0..row {
            hooks.push(row - j + conj.parts()[j] - i - 1);
        }
    }
    hooks
}

/// Dimension d_R of the irrep labelled by `r`, by the hook-length formula.
pub fn dimension(r: &Partition) -> BigInt {
    let hooks: BigInt = hook_lengths(r).into_iter().fold(BigInt::one(), |acc, h| acc * h);
    factorial(r.weight()) / hooks
}

/// Memoized Murnaghan–Nakayama evaluator, shareable across threads.
#[derive(Default)]
pub struct Characters {
    cache: RwLock<HashMap<(Partition, Partition), BigInt>>,
}

impl Characters {
    pub fn new() -> Self {
        Self::default()
    }

    /// chi^R(mu) as an exact integer.
    pub fn character(&self, r: &Partition, mu: &Partition) -> Result<BigInt> {
        if r.weight() != mu.weight() {
            return Err(Error::WeightMismatch {
                left: r.to_string(),
                left_weight: r.weight(),
                right: mu.to_string(),
                right_weight: mu.weight(),
            });
        }
        Ok(self.eval(r, mu))
    }

    fn eval(&self, r: &Partition, mu: &Partition) -> BigInt {
        if mu.parts().iter().all(|&p| p == 1) {
            return dimension(r);
        }
        let key = (r.clone(), mu.clone());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let (&first, rest) = mu.parts().split_first().expect("non-trivial cycle type");
        let rest = Partition::from_unsorted(rest.to_vec());
        let mut acc = BigInt::zero();
        for (smaller, sign) in rim_hooks(r, first) {
            let v = self.eval(&smaller, &rest);
            if sign > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        self.cache.write().unwrap().insert(key, acc.clone());
        acc
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().unwrap().len()
    }
}

/// Process-wide character cache.
pub fn characters() -> &'static Characters {
    static GLOBAL: OnceLock<Characters> = OnceLock::new();
    GLOBAL.get_or_init(Characters::new)
}

/// chi^R(mu) using the process-wide cache.
pub fn character(r: &Partition, mu: &Partition) -> Result<BigInt> {
    characters().character(r, mu)
}

/// Sum of d_R over R |- n, via the hook-length formula.
pub fn sum_of_dimensions(n: usize) -> BigInt {
    partitions(n).iter().map(dimension).sum()
}

/// Number of involutions in S_n: sum_k n!/(2^k k! (n-2k)!).
pub fn involution_count(n: usize) -> BigInt {
    (0..=n / 2)
        .map(|k| factorial(n) / (BigInt::from(2).pow(k as u32) * factorial(k) * factorial(n - 2 * k)))
        .sum()
}

/// Character table of S_n with columns computed on demand.
///
/// Rows and columns both follow the canonical partition order.
pub struct CharacterTable {
    n: usize,
    labels: Vec<Partition>,
    dims: Vec<BigInt>,
    class_sizes: Vec<BigInt>,
    index: HashMap<Partition, usize>,
    columns: Vec<OnceLock<Vec<BigInt>>>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    schema: &'static str,
    n: usize,
    partitions: &'a [Partition],
    dimensions: Vec<String>,
    class_sizes: Vec<String>,
    /// characters[row][column]
    characters: Vec<Vec<String>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let labels = partitions(n);
        let dims = labels.iter().map(dimension).collect();
        let class_sizes = labels.iter().map(Partition::class_size).collect();
        let index = labels.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let columns = labels.iter().map(|_| OnceLock::new()).collect();
        CharacterTable {
            n,
            labels,
            dims,
            class_sizes,
            index,
            columns,
        }
    }

    /// Builds every column up front.
    pub fn full(n: usize, exec: Exec) -> Self {
        let t = Self::new(n);
        t.fill(exec);
        t
    }

    pub fn fill(&self, exec: Exec) {
        exec.map_range(self.labels.len(), |c| {
            self.column(c);
        });
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn dim(&self, row: usize) -> &BigInt {
        &self.dims[row]
    }

    pub fn dims(&self) -> &[BigInt] {
        &self.dims
    }

    pub fn class_size(&self, col: usize) -> &BigInt {
        &self.class_sizes[col]
    }

    pub fn class_sizes(&self) -> &[BigInt] {
        &self.class_sizes
    }

    /// Column `col` (class labels[col]) over all rows.
    pub fn column(&self, col: usize) -> &[BigInt] {
        self.columns[col].get_or_init(|| {
            let mu = &self.labels[col];
            self.labels
                .iter()
                .map(|r| characters().eval(r, mu))
                .collect()
        })
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.column(col)[row]
    }

    /// Rows R, columns mu, header `R` followed by the class labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("\"R\"");
        for mu in &self.labels {
            out.push_str(&format!(",\"{mu}\""));
        }
        out.push('\n');
        for (row, r) in self.labels.iter().enumerate() {
            out.push_str(&format!("\"{r}\""));
            for col in 0..self.labels.len() {
                out.push_str(&format!(",{}", self.get(row, col)));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let json = TableJson {
            schema: "1",
            n: self.n,
            partitions: &self.labels,
            dimensions: self.dims.iter().map(ToString::to_string).collect(),
            class_sizes: self.class_sizes.iter().map(ToString::to_string).collect(),
            characters: (0..self.len())
                .map(|row| (0..self.len()).map(|col| self.get(row, col).to_string()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("table serializes")
    }
}
