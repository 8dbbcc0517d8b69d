//! The dual torus `Pic⁰(S_Δ)` and the Clifford action transported to it.
//!
//! A degree-zero class is represented by its character on the lattice: for
//! `L = φ(v̄)` the component `c_j = E(v, γ_j) mod 1` on the real lattice
//! basis `γ_j`. Tensor product is addition mod 1 and the dual is negation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::action::TorusEndomorphism;
use crate::error::{Error, Result};
use crate::exact::{unimodular_inverse, IntMatrix, Rational};
use crate::torus::{reduce_mod1, torsion_points, PolarizationData, TorusPoint};

/// A class in `Pic⁰(S_Δ)` with rational character data in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleClass {
    c: Vec<Rational>,
}

impl BundleClass {
    pub fn new(c: &[Rational]) -> Self {
        Self { c: reduce_mod1(c) }
    }

    /// The trivial bundle `O` on a torus of complex dimension `dim`.
    pub fn trivial(dim: usize) -> Self {
        Self { c: vec![Rational::zero(); 2 * dim] }
    }

    pub fn components(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_trivial(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.c.len() != other.c.len() {
            return Err(Error::DimensionMismatch { expected: self.c.len(), actual: other.c.len() });
        }
        Ok(Self::new(&self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect::<Vec<_>>()))
    }

    pub fn dual(&self) -> Self {
        Self::new(&self.c.iter().map(|a| -a).collect::<Vec<_>>())
    }

    /// `L^{⊗n}`; negative `n` tensors duals.
    pub fn power(&self, n: i64) -> Self {
        let f = Rational::from_integer(n.into());
        Self::new(&self.c.iter().map(|a| a * &f).collect::<Vec<_>>())
    }

    /// Least `n ≥ 1` with `L^{⊗n} = O`.
    pub fn order(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// Bundle literal form: `[0, 0, 1/2, 0]`.
impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Least `n` with `n·c ≡ 0 (mod 1)`.
pub fn bundle_order(l: &BundleClass) -> BigInt {
    l.order()
}

/// The isomorphism `φ: S_Δ → Pic⁰(S_Δ)` induced by a principal polarization.
#[derive(Clone, Debug)]
pub struct PicardMap {
    // E on the real lattice basis
    form: IntMatrix,
    // (Eᵀ)⁻¹, integral since E is unimodular
    form_t_inv: IntMatrix,
    dim: usize,
}

impl PicardMap {
    pub fn new(pol: &PolarizationData) -> Result<Self> {
        let form = pol.integral_form().ok_or_else(|| Error::NotPrincipal("E is not integral".into()))?;
        let ty = pol.polarization_type()?;
        if !ty.iter().all(One::is_one) {
            let text: Vec<String> = ty.iter().map(ToString::to_string).collect();
            return Err(Error::NotPrincipal(format!("({})", text.join(", "))));
        }
        let dim = form.rows() / 2;
        Ok(Self { form_t_inv: unimodular_inverse(&form.transpose())?, form, dim })
    }

    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_j = E(lift(p), γ_j) mod 1`.
    pub fn phi_forward(&self, p: &TorusPoint) -> Result<BundleClass> {
        if p.dim() != self.dim {
            return Err(Error::LatticeMismatch);
        }
        let x = p.real_coords();
        let c: Vec<Rational> = (0..2 * self.dim)
            .map(|j| {
                x.iter()
                    .enumerate()
                    .filter(|(a, xa)| !xa.is_zero() && !self.form.get(*a, j).is_zero())
                    .map(|(a, xa)| xa * Rational::from_integer(self.form.get(a, j).clone()))
                    .sum()
            })
            .collect();
        Ok(BundleClass::new(&c))
    }

    /// Solves `Eᵀx ≡ c (mod 1)`.
    pub fn phi_inverse(&self, l: &BundleClass) -> Result<TorusPoint> {
        let c = l.components();
        if c.len() != 2 * self.dim {
            return Err(Error::DimensionMismatch { expected: 2 * self.dim, actual: c.len() });
        }
        let x: Vec<Rational> = (0..2 * self.dim)
            .map(|r| {
                self.form_t_inv
                    .row(r)
                    .iter()
                    .zip(c)
                    .filter(|(m, _)| !m.is_zero())
                    .map(|(m, x)| Rational::from_integer(m.clone()) * x)
                    .sum()
            })
            .collect();
        Ok(TorusPoint::from_real_coords(&x))
    }

    /// `ρ*_h(L) = φ(ρ̂_h(φ⁻¹(L)))`.
    pub fn induced_action(&self, endo: &TorusEndomorphism, l: &BundleClass) -> Result<BundleClass> {
        self.phi_forward(&endo.apply(&self.phi_inverse(l)?))
    }

    pub fn induced_action_n(&self, endo: &TorusEndomorphism, l: &BundleClass, n: u32) -> Result<BundleClass> {
        (0..n).try_fold(l.clone(), |acc, _| self.induced_action(endo, &acc))
    }

    /// Translation bundles `L_M = φ(M)`, `L_N = φ(N)` of an actor at `L`
    /// and the bundle identities that fail (empty when the system holds).
    ///
    /// Order 4: `ρ*L = L⊗L_M`, `ρ*²L = L⊗L_M⊗L_N`, `ρ*³L = L⊗L_N`,
    /// `ρ*⁴L = L` and `(L^∨)^{⊗2} = L_M⊗L_N`. Order 2: `ρ*L = L⊗L_M`,
    /// `ρ*²L = L` and `L_N = L_M^∨`.
    pub fn clifford_bundle_system(
        &self,
        endo: &TorusEndomorphism,
        order: u32,
        l: &BundleClass,
    ) -> Result<BundleSystem> {
        let base = self.phi_inverse(l)?;
        let once = endo.apply(&base);
        let twice = endo.apply(&once);
        let l_m = self.phi_forward(&once.sub(&base)?)?;
        let l_n = self.phi_forward(&twice.sub(&once)?)?;
        let mut powers = Vec::with_capacity(4);
        let mut acc = l.clone();
        for _ in 0..4 {
            acc = self.induced_action(endo, &acc)?;
            powers.push(acc.clone());
        }

        let mut failures = Vec::new();
        let mut check = |ok: bool, name: &'static str| {
            if !ok {
                failures.push(name);
            }
        };
        let lm_ln = l_m.tensor(&l_n)?;
        match order {
            4 => {
                check(powers[0] == l.tensor(&l_m)?, "rho*(L) = L (x) L_M");
                check(powers[1] == l.tensor(&lm_ln)?, "rho*^2(L) = L (x) L_M (x) L_N");
                check(powers[2] == l.tensor(&l_n)?, "rho*^3(L) = L (x) L_N");
                check(powers[3] == *l, "rho*^4(L) = L");
                check(l.dual().power(2) == lm_ln, "(L^v)^2 = L_M (x) L_N");
            }
            2 => {
                check(powers[0] == l.tensor(&l_m)?, "rho*(L) = L (x) L_M");
                check(powers[1] == *l, "rho*^2(L) = L");
                check(l_n == l_m.dual(), "L_N = L_M^v");
            }
            _ => check(l_m.is_trivial() && l_n.is_trivial(), "L_M = L_N = O"),
        }
        Ok(BundleSystem { l_m, l_n, failures })
    }

    /// Scans all classes of order dividing 2 and checks that the translation
    /// bundle `L_M` has order at most 2 and `L_N = L_M`.
    pub fn verify_two_torsion_bundles(&self, endo: &TorusEndomorphism, cap: u64) -> Result<TwoTorsionBundleReport> {
        let mut counterexamples = Vec::new();
        let mut checked = 0;
        for eps in torsion_points(2, self.dim, cap)? {
            let l = BundleClass::new(&eps.real_coords());
            let sys = self.clifford_bundle_system(endo, 2, &l)?;
            if sys.l_m.order() > BigInt::from(2) || sys.l_n != sys.l_m {
                counterexamples.push((l, sys));
            }
            checked += 1;
        }
        Ok(TwoTorsionBundleReport { all_pass: counterexamples.is_empty(), checked, counterexamples })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSystem {
    pub l_m: BundleClass,
    pub l_n: BundleClass,
    pub failures: Vec<&'static str>,
}

impl BundleSystem {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTorsionBundleReport {
    pub all_pass: bool,
    pub checked: usize,
    pub counterexamples: Vec<(BundleClass, BundleSystem)>,
}
