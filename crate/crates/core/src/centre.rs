//! The centre Z(C(S_n)): cycle class sums T_k, their eigenvalues on the
//! central projectors P_R, signatures, and the cutoff k*(n).

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::characters::{character, dimension, rim_hooks, CharacterTable};
use crate::combinat::{factorial, falling};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::partition::{partitions, Partition};
use crate::perm::all_perms;

/// Shared, fully built character table of S_n.
pub fn table(n: usize) -> Arc<CharacterTable> {
    static TABLES: OnceLock<RwLock<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(CharacterTable::full(n, Exec::default()));
    tables.write().unwrap().entry(n).or_insert(t).clone()
}

/// |T_k| = n!/(k (n-k)!), the number of k-cycles in S_n.
pub fn cycle_class_size(n: usize, k: usize) -> BigInt {
    falling(n, k) / k
}

fn exact_div(num: BigInt, den: &BigInt, what: impl FnOnce() -> String) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Consistency(format!("{} is not an integer", what())));
    }
    Ok(q)
}

/// |C_mu| chi^R(mu) / d_R: the eigenvalue of T_mu on P_R.
pub fn normalized_character_class(r: &Partition, mu: &Partition) -> Result<BigInt> {
    let chi = character(r, mu)?;
    exact_div(mu.class_size() * chi, &dimension(r), || {
        format!("normalized character of {r} at class {mu}")
    })
}

/// chi_hat^R(T_k) for the k-cycle class [k, 1^(n-k)].
pub fn normalized_character(r: &Partition, k: usize) -> Result<BigInt> {
    let mu = Partition::cycle_class(r.weight(), k)?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!("cycle length must be at least 2, got {k}")));
    }
    normalized_character_class(r, &mu)
}

/// Sum over boxes of (column - row).
pub fn content_sum(r: &Partition) -> i64 {
    r.parts()
        .iter()
        .enumerate()
        .map(|(i, &row)| (0..row).map(|j| j as i64 - i as i64).sum::<i64>())
        .sum()
}

/// max_R chi_hat^R(T_k), found by scanning all R |- n and checked against
/// the closed form |T_k|.
pub fn chi_max(n: usize, k: usize) -> Result<BigInt> {
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
    }
    let column = CycleColumns::new(n, Exec::default()).column(k, Exec::default())?;
    let scanned = column.into_iter().max().expect("n >= 2 has partitions");
    let closed = cycle_class_size(n, k);
    if scanned != closed {
        return Err(Error::Consistency(format!(
            "chi_max({n},{k}) scan gave {scanned}, closed form {closed}"
        )));
    }
    Ok(scanned)
}

/// Bulk evaluator for chi_hat^R(T_k) over every R |- n.
///
/// Uses one Murnaghan–Nakayama step: chi^R([k,1^(n-k)]) is a signed sum of
/// the dimensions of R with a k-rim-hook removed.
pub struct CycleColumns {
    n: usize,
    labels: Vec<Partition>,
    dims: Vec<BigInt>,
}

impl CycleColumns {
    pub fn new(n: usize, exec: Exec) -> Self {
        let labels = partitions(n);
        let dims = exec.map(&labels, dimension);
        CycleColumns { n, labels, dims }
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn column(&self, k: usize, exec: Exec) -> Result<Vec<BigInt>> {
        let n = self.n;
        if k < 2 || k > n {
            return Err(Error::InvalidArgument(format!("need 2 <= k <= n, got k = {k}, n = {n}")));
        }
        let smaller = partitions(n - k);
        let small_dims: HashMap<Partition, BigInt> = smaller
            .iter()
            .cloned()
            .zip(exec.map(&smaller, dimension))
            .collect();
        let size = cycle_class_size(n, k);
        let rows: Vec<usize> = (0..self.labels.len()).collect();
        exec.try_map(&rows, |&i| {
            let r = &self.labels[i];
            let chi: BigInt = rim_hooks(r, k)
                .into_iter()
                .map(|(q, sign)| {
                    let d = &small_dims[&q];
                    if sign > 0 {
                        d.clone()
                    } else {
                        -d.clone()
                    }
                })
                .sum();
            exact_div(&size * chi, &self.dims[i], || format!("chi_hat^{r}(T_{k})"))
        })
    }
}

/// A diagram together with its eigenvalues (chi_hat(T_2), .., chi_hat(T_K)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub label: Partition,
    #[serde(serialize_with = "ser_bigints")]
    pub values: Vec<BigInt>,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(i) => s.serialize_i64(i),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Signatures of all R |- n up to cutoff K, indexed for lookup.
#[derive(Clone, Debug)]
pub struct SignatureTable {
    n: usize,
    k_max: usize,
    signatures: Vec<Signature>,
    lookup: HashMap<Vec<BigInt>, Vec<usize>>,
}

impl SignatureTable {
    /// Signatures over T_2..T_K. For n < 2 or K < 2 every signature is empty.
    pub fn build(n: usize, k_max: usize, exec: Exec) -> Result<Self> {
        if n >= 2 && k_max > n {
            return Err(Error::InvalidArgument(format!("cutoff K = {k_max} exceeds n = {n}")));
        }
        let cols = CycleColumns::new(n, exec);
        let columns = (2..=k_max.min(n).max(1))
            .filter(|&k| k >= 2)
            .map(|k| cols.column(k, exec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_columns(n, k_max, cols.labels.clone(), &columns))
    }

    fn from_columns(n: usize, k_max: usize, labels: Vec<Partition>, columns: &[Vec<BigInt>]) -> Self {
        let signatures: Vec<Signature> = labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| Signature {
                label,
                values: columns.iter().map(|c| c[i].clone()).collect(),
            })
            .collect();
        let mut lookup: HashMap<Vec<BigInt>, Vec<usize>> = HashMap::new();
        for (i, s) in signatures.iter().enumerate() {
            lookup.entry(s.values.clone()).or_default().push(i);
        }
        SignatureTable {
            n,
            k_max,
            signatures,
            lookup,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.k_max
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    pub fn signature_of(&self, r: &Partition) -> Option<&Signature> {
        self.signatures.iter().find(|s| &s.label == r)
    }

    /// Groups of diagrams sharing a signature (empty when collision-free).
    pub fn collisions(&self) -> Vec<Vec<Partition>> {
        let mut groups: Vec<Vec<Partition>> = self
            .lookup
            .values()
            .filter(|idx| idx.len() > 1)
            .map(|idx| {
                let mut g: Vec<Partition> = idx.iter().map(|&i| self.signatures[i].label.clone()).collect();
                g.sort();
                g
            })
            .collect();
        groups.sort();
        groups
    }

    pub fn is_collision_free(&self) -> bool {
        self.lookup.len() == self.signatures.len()
    }

    /// The unique diagram with this signature, if any.
    pub fn lookup(&self, values: &[BigInt]) -> Option<&Partition> {
        match self.lookup.get(values).map(Vec::as_slice) {
            Some([i]) => Some(&self.signatures[*i].label),
            _ => None,
        }
    }

    /// Header `partition,chi_hat(T_2),..,chi_hat(T_K)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition");
        for k in 2..=self.k_max {
            out.push_str(&format!(",chi_hat(T_{k})"));
        }
        out.push('\n');
        for s in &self.signatures {
            out.push_str(&format!("\"{}\"", s.label));
            for v in &s.values {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Minimal K such that (chi_hat(T_2), .., chi_hat(T_K)) separates all R |- n.
///
/// For n < 2 there is a single diagram and no round is needed; returns 1.
pub fn k_star(n: usize) -> usize {
    k_star_with(n, Exec::default())
}

pub fn k_star_with(n: usize, exec: Exec) -> usize {
    if n < 2 {
        return 1;
    }
    let cols = CycleColumns::new(n, exec);
    let mut keys: Vec<Vec<BigInt>> = vec![Vec::new(); cols.labels.len()];
    for k in 2..=n {
        let column = cols.column(k, exec).expect("2 <= k <= n");
        for (key, v) in keys.iter_mut().zip(column) {
            key.push(v);
        }
        let mut sorted: Vec<&Vec<BigInt>> = keys.iter().collect();
        sorted.sort_unstable();
        if sorted.windows(2).all(|w| w[0] != w[1]) {
            return k;
        }
    }
    unreachable!("T_2..T_n generate the centre, so signatures separate at K = n")
}

/// Signature table at the detection cutoff k*(n).
pub fn detection_table(n: usize) -> Arc<SignatureTable> {
    static TABLES: OnceLock<RwLock<HashMap<usize, Arc<SignatureTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(SignatureTable::build(n, k_star(n), Exec::default()).expect("k* <= n"));
    debug_assert!(t.is_collision_free());
    tables.write().unwrap().entry(n).or_insert(t).clone()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KStarRow {
    pub n: usize,
    pub k_star: usize,
    /// n^{1/4} / ln n, the heuristic growth scale.
    pub heuristic: f64,
}

/// (n, k*(n), n^{1/4}/ln n) for n = 2..=n_max.
pub fn k_star_growth_report(n_max: usize, exec: Exec) -> Vec<KStarRow> {
    let ns: Vec<usize> = (2..=n_max).collect();
    // Per-n work is already parallel; run the outer loop sequentially so the
    // large n are not starved.
    ns.iter()
        .map(|&n| {
            let k = k_star_with(n, exec);
            assert!(k <= n);
            KStarRow {
                n,
                k_star: k,
                heuristic: (n as f64).powf(0.25) / (n as f64).ln(),
            }
        })
        .collect()
}

/// The report as the JSON array `[{"n":..,"k_star":..}, ..]`.
pub fn k_star_json(rows: &[KStarRow]) -> String {
    #[derive(Serialize)]
    struct Row {
        n: usize,
        k_star: usize,
    }
    let rows: Vec<Row> = rows.iter().map(|r| Row { n: r.n, k_star: r.k_star }).collect();
    serde_json::to_string(&rows).expect("rows serialize")
}

/// Largest n accepted by [`structure_constants`].
pub const STRUCTURE_CONSTANTS_MAX_N: usize = 8;

/// Matrix (C_mu)_nu^lambda = C_{mu nu}^lambda with T_mu T_nu = sum_lambda C T_lambda.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantsMatrix {
    pub mu: Partition,
    pub labels: Vec<Partition>,
    /// entries[nu][lambda]
    pub entries: Vec<Vec<u64>>,
}

impl StructureConstantsMatrix {
    pub fn entry(&self, nu: usize, lambda: usize) -> u64 {
        self.entries[nu][lambda]
    }

    /// Multiplication by T_mu on an element given in the class-sum basis.
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        let len = self.labels.len();
        (0..len)
            .map(|lambda| {
                (0..len)
                    .filter(|&nu| self.entries[nu][lambda] != 0)
                    .map(|nu| &x[nu] * BigRational::from_integer(self.entries[nu][lambda].into()))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }
}

/// Structure constants by direct enumeration of S_n:
/// C_{mu nu}^lambda = #{a in C_mu : a^{-1} pi_lambda in C_nu}.
pub fn structure_constants(n: usize, mu: &Partition) -> Result<StructureConstantsMatrix> {
    if n > STRUCTURE_CONSTANTS_MAX_N {
        return Err(Error::Capability {
            what: "structure constant enumeration",
            limit: STRUCTURE_CONSTANTS_MAX_N,
            got: n,
        });
    }
    mu.ensure_weight(n)?;
    let labels = partitions(n);
    let index: HashMap<&Partition, usize> = labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let perms = all_perms(n);
    let classes: Vec<usize> = perms.iter().map(|p| index[&p.cycle_type()]).collect();
    let mu_idx = index[mu];
    let mut reps = vec![None; labels.len()];
    for (p, &c) in perms.iter().zip(&classes) {
        reps[c].get_or_insert(p);
    }
    let len = labels.len();
    let mut entries = vec![vec![0u64; len]; len];
    for (lambda, rep) in reps.iter().enumerate() {
        let rep = rep.expect("every class is non-empty");
        for (a, _) in perms.iter().zip(&classes).filter(|(_, &c)| c == mu_idx) {
            let b = a.inverse().compose(rep);
            entries[index[&b.cycle_type()]][lambda] += 1;
        }
    }
    Ok(StructureConstantsMatrix {
        mu: mu.clone(),
        labels,
        entries,
    })
}

/// Scalars that centre elements can carry: exact rationals or complex doubles.
pub trait CentreScalar: Clone + Zero + Add<Output = Self> + Mul<Output = Self> {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;
}

impl CentreScalar for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }
}

impl CentreScalar for Complex64 {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Complex64::new(ratio_to_f64(num, den), 0.0)
    }
}

pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    let r = BigRational::new(num.clone(), den.clone());
    num_traits::ToPrimitive::to_f64(&r).unwrap_or(f64::NAN)
}

/// Coefficients a_R over the projectors P_R to coefficients c_mu over the
/// class sums T_mu: c_mu = sum_R a_R d_R chi^R(mu) / n!.
pub fn projector_to_class_basis<T: CentreScalar>(table: &CharacterTable, a: &[T]) -> Vec<T> {
    let order = factorial(table.n());
    (0..table.len())
        .map(|mu| {
            (0..table.len()).fold(T::zero(), |acc, r| {
                acc + a[r].clone() * T::from_ratio(&(table.dim(r) * table.get(r, mu)), &order)
            })
        })
        .collect()
}

/// Inverse of [`projector_to_class_basis`]: a_R = sum_mu |C_mu| chi^R(mu) c_mu / d_R.
pub fn class_to_projector_basis<T: CentreScalar>(table: &CharacterTable, c: &[T]) -> Vec<T> {
    (0..table.len())
        .map(|r| {
            (0..table.len()).fold(T::zero(), |acc, mu| {
                acc + c[mu].clone() * T::from_ratio(&(table.class_size(mu) * table.get(r, mu)), table.dim(r))
            })
        })
        .collect()
}

/// An element of Z(C(S_n)) stored by its coefficients over the projectors P_R
/// (canonical order).
#[derive(Clone, Debug, PartialEq)]
pub struct CentreState {
    pub n: usize,
    pub coeffs: Vec<Complex64>,
}

impl CentreState {
    pub fn from_projector_coeffs(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let len = table(n).len();
        if coeffs.len() != len {
            return Err(Error::InvalidArgument(format!(
                "expected {len} projector coefficients for n = {n}, got {}",
                coeffs.len()
            )));
        }
        Ok(CentreState { n, coeffs })
    }

    pub fn from_class_coeffs(n: usize, c: &[Complex64]) -> Result<Self> {
        let t = table(n);
        if c.len() != t.len() {
            return Err(Error::InvalidArgument("class coefficient count".into()));
        }
        Ok(CentreState {
            n,
            coeffs: class_to_projector_basis(&t, c),
        })
    }

    pub fn labels(&self) -> Vec<Partition> {
        table(self.n).labels().to_vec()
    }

    pub fn class_coeffs(&self) -> Vec<Complex64> {
        projector_to_class_basis(&table(self.n), &self.coeffs)
    }

    /// Coefficients over the g-orthonormal basis sqrt(n!) P_R / d_R.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        let t = table(self.n);
        let order = factorial(self.n);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(r, a)| a * plancherel(t.dim(r), &order).sqrt())
            .collect()
    }

    pub fn g_norm(&self) -> f64 {
        g_inner(self, self).re.sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.g_norm();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(CentreState {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c / norm).collect(),
        })
    }
}

fn plancherel(d: &BigInt, order: &BigInt) -> f64 {
    ratio_to_f64(&(d * d), order)
}

/// g(a, b) = delta(conj(S(a)) b), computed in the projector basis:
/// sum_R conj(a_R) b_R d_R^2 / n!.
pub fn g_inner(a: &CentreState, b: &CentreState) -> Complex64 {
    assert_eq!(a.n, b.n, "states over different centres");
    let t = table(a.n);
    let order = factorial(a.n);
    a.coeffs
        .iter()
        .zip(&b.coeffs)
        .enumerate()
        .map(|(r, (x, y))| x.conj() * y * plancherel(t.dim(r), &order))
        .sum()
}

/// g(a, b) computed in the class-sum basis: sum_mu conj(c_mu) c'_mu |C_mu|.
pub fn g_inner_class_basis(a: &CentreState, b: &CentreState) -> Complex64 {
    let t = table(a.n);
    a.class_coeffs()
        .iter()
        .zip(b.class_coeffs())
        .enumerate()
        .map(|(mu, (x, y))| x.conj() * y * t.class_size(mu).to_f64().unwrap())
        .sum()
}

/// P_R as a state: coefficient 1 on R.
pub fn projector_state(r: &Partition) -> CentreState {
    let n = r.weight();
    let t = table(n);
    let i = t.index_of(r).expect("partition of n");
    let mut coeffs = vec![Complex64::zero(); t.len()];
    coeffs[i] = Complex64::new(1.0, 0.0);
    CentreState { n, coeffs }
}

/// Exact class-sum coefficients of P_R: d_R chi^R(mu) / n!.
pub fn projector_class_coeffs(r: &Partition) -> Vec<BigRational> {
    let n = r.weight();
    let t = table(n);
    let i = t.index_of(r).expect("partition of n");
    let mut a = vec![BigRational::zero(); t.len()];
    a[i] = BigRational::from_integer(1.into());
    projector_to_class_basis(&t, &a)
}
