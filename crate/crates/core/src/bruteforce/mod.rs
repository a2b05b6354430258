//! Deliberately naive exact arithmetic in C(S_n) and C(S_n) ⊗ C(S_n).
//!
//! Elements are dense coefficient vectors over the group (or over pairs of
//! permutations) with exact rational entries. Everything here is an oracle:
//! it avoids the character machinery of the rest of the crate.

mod characters;
mod orbits;
mod tableaux;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::{all_perms, Perm};

pub use characters::{
    kostka, kronecker_oracle, oracle_character, permutation_character, projector, OracleCharacters,
};
pub use orbits::{diagonal_orbit_sum, diagonal_orbits, subgroup_orbit_sum, subgroup_orbits};
pub use tableaux::lr_tableaux_count;

/// Exact scalar of the oracle algebras.
pub type Q = Ratio<i128>;

/// Largest n for products in C(S_n).
pub const SINGLE_PRODUCT_MAX_N: usize = 5;
/// Largest n for products in C(S_n) ⊗ C(S_n).
pub const TENSOR_PRODUCT_MAX_N: usize = 4;
/// Largest n for which C(S_n) elements can be built at all.
pub const SINGLE_MAX_N: usize = 6;
/// Largest n for which C(S_n) ⊗ C(S_n) elements can be built at all.
pub const TENSOR_MAX_N: usize = 5;

/// The basis of C(S_n) or of C(S_n) ⊗ C(S_n) and, lazily, its product table.
pub struct Algebra {
    n: usize,
    tensor: bool,
    perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: OnceLock<Vec<u32>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.tensor { "C(S_n)⊗C(S_n)" } else { "C(S_n)" };
        write!(f, "{kind} with n = {}", self.n)
    }
}

fn cached(n: usize, tensor: bool) -> Arc<Algebra> {
    static ALGEBRAS: OnceLock<Mutex<HashMap<(usize, bool), Arc<Algebra>>>> = OnceLock::new();
    let mut map = ALGEBRAS.get_or_init(Default::default).lock().unwrap();
    map.entry((n, tensor))
        .or_insert_with(|| {
            let perms = all_perms(n);
            let index = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            Arc::new(Algebra {
                n,
                tensor,
                perms,
                index,
                table: OnceLock::new(),
            })
        })
        .clone()
}

/// C(S_n).
pub fn group_algebra(n: usize) -> Result<Arc<Algebra>> {
    if n > SINGLE_MAX_N {
        return Err(Error::Capability {
            what: "brute-force group algebra",
            limit: SINGLE_MAX_N,
            got: n,
        });
    }
    Ok(cached(n, false))
}

/// C(S_n) ⊗ C(S_n), basis pairs (σ1, σ2).
pub fn tensor_algebra(n: usize) -> Result<Arc<Algebra>> {
    if n > TENSOR_MAX_N {
        return Err(Error::Capability {
            what: "brute-force tensor algebra",
            limit: TENSOR_MAX_N,
            got: n,
        });
    }
    Ok(cached(n, true))
}

impl Algebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_tensor(&self) -> bool {
        self.tensor
    }

    /// Number of basis elements.
    pub fn dim(&self) -> usize {
        if self.tensor {
            self.perms.len().pow(2)
        } else {
            self.perms.len()
        }
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    fn perm_index(&self, p: &Perm) -> usize {
        self.index[p]
    }

    pub fn index_of(&self, p: &Perm) -> usize {
        assert!(!self.tensor);
        self.perm_index(p)
    }

    pub fn pair_index(&self, a: &Perm, b: &Perm) -> usize {
        assert!(self.tensor);
        self.perm_index(a) * self.perms.len() + self.perm_index(b)
    }

    /// Basis element at `i` as a pair of permutations (second is the
    /// identity for C(S_n)).
    pub fn basis(&self, i: usize) -> (&Perm, Option<&Perm>) {
        if self.tensor {
            let m = self.perms.len();
            (&self.perms[i / m], Some(&self.perms[i % m]))
        } else {
            (&self.perms[i], None)
        }
    }

    fn identity_index(&self) -> usize {
        let e = self.perm_index(&Perm::identity(self.n));
        if self.tensor {
            e * self.perms.len() + e
        } else {
            e
        }
    }

    fn inverse_index(&self, i: usize) -> usize {
        if self.tensor {
            let m = self.perms.len();
            let a = self.perm_index(&self.perms[i / m].inverse());
            let b = self.perm_index(&self.perms[i % m].inverse());
            a * m + b
        } else {
            self.perm_index(&self.perms[i].inverse())
        }
    }

    fn product_table(&self) -> Result<&[u32]> {
        let limit = if self.tensor {
            TENSOR_PRODUCT_MAX_N
        } else {
            SINGLE_PRODUCT_MAX_N
        };
        if self.n > limit {
            return Err(Error::Capability {
                what: if self.tensor {
                    "brute-force tensor product"
                } else {
                    "brute-force group algebra product"
                },
                limit,
                got: self.n,
            });
        }
        Ok(self.table.get_or_init(|| {
            let m = self.perms.len();
            let single: Vec<u32> = (0..m * m)
                .map(|ij| self.perm_index(&self.perms[ij / m].compose(&self.perms[ij % m])) as u32)
                .collect();
            if !self.tensor {
                return single;
            }
            let d = m * m;
            let mut table = vec![0u32; d * d];
            for x in 0..d {
                for y in 0..d {
                    let a = single[(x / m) * m + y / m] as usize;
                    let b = single[(x % m) * m + y % m] as usize;
                    table[x * d + y] = (a * m + b) as u32;
                }
            }
            table
        }))
    }
}

/// An element of an oracle algebra.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<Algebra>,
    coeffs: Vec<Q>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({:?}; ", self.algebra)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match self.algebra.basis(i) {
                (a, None) => write!(f, "{c}·{:?}", a.images())?,
                (a, Some(b)) => write!(f, "{c}·{:?}⊗{:?}", a.images(), b.images())?,
            }
        }
        write!(f, ")")
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl Element {
    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Element {
            algebra: algebra.clone(),
            coeffs: vec![Q::zero(); algebra.dim()],
        }
    }

    pub fn unit(algebra: &Arc<Algebra>) -> Self {
        Self::basis(algebra, algebra.identity_index())
    }

    pub fn basis(algebra: &Arc<Algebra>, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[i] = Q::one();
        e
    }

    pub fn from_coeffs(algebra: &Arc<Algebra>, coeffs: Vec<Q>) -> Self {
        assert_eq!(coeffs.len(), algebra.dim());
        Element {
            algebra: algebra.clone(),
            coeffs,
        }
    }

    pub fn perm(algebra: &Arc<Algebra>, p: &Perm) -> Self {
        Self::basis(algebra, algebra.index_of(p))
    }

    /// Sum of all permutations of cycle type mu.
    pub fn class_sum(algebra: &Arc<Algebra>, mu: &Partition) -> Self {
        assert!(!algebra.tensor);
        let coeffs = algebra
            .perms
            .iter()
            .map(|p| if &p.cycle_type() == mu { Q::one() } else { Q::zero() })
            .collect();
        Self::from_coeffs(algebra, coeffs)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: Q) -> Self {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "elements of {:?} and {:?} cannot be combined",
                self.algebra, other.algebra
            )))
        }
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let table = self.algebra.product_table()?;
        let d = self.algebra.dim();
        let mut out = vec![Q::zero(); d];
        let right: Vec<(usize, Q)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, *c))
            .collect();
        for (x, a) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let row = &table[x * d..(x + 1) * d];
            for &(y, b) in &right {
                let z = row[y] as usize;
                out[z] = out[z] + a * b;
            }
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: out,
        })
    }

    /// S(sum c_i σ_i) = sum c_i σ_i^{-1}.
    pub fn antipode(&self) -> Self {
        let mut out = vec![Q::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[self.algebra.inverse_index(i)] = *c;
        }
        Element {
            algebra: self.algebra.clone(),
            coeffs: out,
        }
    }

    /// Coefficient of the identity.
    pub fn delta(&self) -> Q {
        self.coeffs[self.algebra.identity_index()]
    }

    /// a ⊗ b in C(S_n) ⊗ C(S_n).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let t = tensor_algebra(self.algebra.n)?;
        let m = self.coeffs.len();
        let mut coeffs = vec![Q::zero(); m * m];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i * m + j] = a * b;
            }
        }
        Ok(Element::from_coeffs(&t, coeffs))
    }

    /// Coproduct Δ(σ) = σ ⊗ σ, extended linearly.
    pub fn coproduct(&self) -> Result<Self> {
        let t = tensor_algebra(self.algebra.n)?;
        let m = self.coeffs.len();
        let mut coeffs = vec![Q::zero(); m * m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m + i] = *c;
        }
        Ok(Element::from_coeffs(&t, coeffs))
    }
}

/// g(a, b) = δ(conj(S(a)) b), computed through an actual product. Scalars
/// are real here, so conjugation is trivial.
pub fn g_pair(a: &Element, b: &Element) -> Result<Q> {
    Ok(a.antipode().multiply(b)?.delta())
}

macro_rules! elementwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.check_same(rhs).expect("same algebra");
                Element {
                    algebra: self.algebra.clone(),
                    coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a $op b).collect(),
                }
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("product within oracle limits")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-Q::one())
    }
}
