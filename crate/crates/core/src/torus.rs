//! The spinor torus `S_Δ = Δ / Γ_Δ`, its torsion points and polarization.
//!
//! Points are stored in lattice coordinates: a point with lift `v ∈ Δ` is
//! kept as `w = P⁻¹v` reduced so that every real and imaginary part lies in
//! `[0, 1)`. For the default lattice `P = Id` the two coincide.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{frac, smith_form, GaussianRational, IntMatrix, Matrix, Rational};

/// Generators of `Γ_Δ = P · Z[i]^(2^k)` as the columns of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    basis: Matrix,
    inverse: Matrix,
}

impl LatticeSpec {
    /// `Γ_Δ = Z[i]^(2^k)`.
    pub fn standard(k: usize) -> Self {
        let n = 1 << k;
        Self { basis: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    pub fn new(basis: Matrix) -> Result<Self> {
        let inverse = basis.inverse()?;
        Ok(Self { basis, inverse })
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// Complex dimension `g`.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_standard(&self) -> bool {
        self.basis == Matrix::identity(self.dim())
    }

    /// `P⁻¹·A·P`: an endomorphism of `Δ` written in lattice coordinates.
    pub fn to_lattice_frame(&self, a: &Matrix) -> Matrix {
        &(&self.inverse * a) * &self.basis
    }

    /// `P·B·P⁻¹`.
    pub fn from_lattice_frame(&self, b: &Matrix) -> Matrix {
        &(&self.basis * b) * &self.inverse
    }

    /// The real lattice basis `(γ_1..γ_g, iγ_1..iγ_g)` as vectors of `Δ`.
    pub fn real_basis(&self) -> Vec<Vec<GaussianRational>> {
        let g = self.dim();
        let cols: Vec<Vec<GaussianRational>> =
            (0..g).map(|c| (0..g).map(|r| self.basis.get(r, c).clone()).collect()).collect();
        let imag = cols.iter().map(|v| v.iter().map(|x| x.mul_i_pow(1)).collect()).collect::<Vec<_>>();
        cols.into_iter().chain(imag).collect()
    }
}

/// A point of `S_Δ` in reduced lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<GaussianRational>,
}

impl TorusPoint {
    pub fn origin(dim: usize) -> Self {
        Self { coords: vec![GaussianRational::zero(); dim] }
    }

    /// Reduces lattice coordinates into the fundamental domain `[0,1)²` per coordinate.
    pub fn from_lattice_coords(w: &[GaussianRational]) -> Self {
        Self { coords: w.iter().map(GaussianRational::reduce_mod_gaussian_integers).collect() }
    }

    /// From real coordinates `(re_1..re_g, im_1..im_g)` on the real lattice basis.
    pub fn from_real_coords(x: &[Rational]) -> Self {
        let g = x.len() / 2;
        let w: Vec<_> = (0..g).map(|a| GaussianRational::new(x[a].clone(), x[g + a].clone())).collect();
        Self::from_lattice_coords(&w)
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Real coordinates `(re..., im...)`, each in `[0, 1)`.
    pub fn real_coords(&self) -> Vec<Rational> {
        self.coords.iter().map(|c| c.re().clone()).chain(self.coords.iter().map(|c| c.im().clone())).collect()
    }

    /// The representative lift in `Δ`.
    pub fn lift(&self, lattice: &LatticeSpec) -> Vec<GaussianRational> {
        lattice.basis().apply(&self.coords).expect("dimension")
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let w: Vec<_> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self::from_lattice_coords(&w))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_lattice_coords(&self.coords.iter().map(|a| -a).collect::<Vec<_>>())
    }

    /// Multiplication by a Gaussian integer; well defined since `iΓ ⊂ Γ`.
    pub fn zmul(&self, c: &GaussianRational) -> Result<Self> {
        if !c.is_gaussian_integer() {
            return Err(Error::NotIntegral(c.to_string()));
        }
        Ok(Self::from_lattice_coords(&self.coords.iter().map(|a| a * c).collect::<Vec<_>>()))
    }

    pub fn times(&self, n: i64) -> Self {
        self.zmul(&GaussianRational::from_int(n)).expect("integer")
    }

    /// Order in the group `S_Δ`: the lcm of all coordinate denominators.
    pub fn order(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
    }
}

/// Point literal form: `1/4, 1/2+1/2i`.
impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Maps a vector of `Δ` to `S_Δ`.
pub fn reduce(v: &[GaussianRational], lattice: &LatticeSpec) -> Result<TorusPoint> {
    if v.len() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim(), actual: v.len() });
    }
    Ok(TorusPoint::from_lattice_coords(&lattice.inverse().apply(v)?))
}

/// Default enumeration cap on `n^(2g)`.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Streams the `n`-torsion subgroup `(1/n)Γ/Γ`, `n^(2g)` points, in a
/// fixed order; [`TorsionPoints::point_at`] allows partitioning by index.
#[derive(Clone, Debug)]
pub struct TorsionPoints {
    n: u64,
    dim: usize,
    total: u64,
    next: u64,
}

impl TorsionPoints {
    pub fn len_total(&self) -> u64 {
        self.total
    }

    /// Point number `index`: base-`n` digits of the index are the
    /// numerators of the real coordinates, least significant first.
    pub fn point_at(&self, index: u64) -> TorusPoint {
        let mut rest = index;
        let x: Vec<Rational> = (0..2 * self.dim)
            .map(|_| {
                let d = rest % self.n;
                rest /= self.n;
                Rational::new(BigInt::from(d), BigInt::from(self.n))
            })
            .collect();
        TorusPoint::from_real_coords(&x)
    }
}

impl Iterator for TorsionPoints {
    type Item = TorusPoint;

    fn next(&mut self) -> Option<TorusPoint> {
        (self.next < self.total).then(|| {
            self.next += 1;
            self.point_at(self.next - 1)
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for TorsionPoints {}

/// All points of order dividing `n` on a `dim`-dimensional torus.
pub fn torsion_points(n: u64, dim: usize, cap: u64) -> Result<TorsionPoints> {
    assert!(n >= 1, "torsion order must be positive");
    let count: BigInt = Pow::pow(BigInt::from(n), 2 * dim as u32);
    match count.to_u64() {
        Some(total) if total <= cap => Ok(TorsionPoints { n, dim, total, next: 0 }),
        _ => Err(Error::EnumerationTooLarge { count: count.to_string(), cap }),
    }
}

/// A Hermitian form `H` on `Δ` and `E = Im H` on the real lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationData {
    hermitian: Matrix,
    // real entries, rows/cols indexed by the real lattice basis
    form: Matrix,
}

/// `H(v, w) = vᵀ·H·conj(w)`, linear in the first argument.
pub fn hermitian_value(h: &Matrix, v: &[GaussianRational], w: &[GaussianRational]) -> GaussianRational {
    let conj: Vec<_> = w.iter().map(GaussianRational::conj).collect();
    let hw = h.apply(&conj).expect("dimension");
    v.iter().zip(&hw).fold(GaussianRational::zero(), |acc, (a, b)| acc + a * b)
}

impl PolarizationData {
    pub fn new(hermitian: Matrix, lattice: &LatticeSpec) -> Result<Self> {
        if hermitian.rows() != lattice.dim() || !hermitian.is_square() {
            return Err(Error::DimensionMismatch { expected: lattice.dim(), actual: hermitian.rows() });
        }
        let basis = lattice.real_basis();
        let n = basis.len();
        let form = Matrix::from_fn(n, n, |a, b| {
            GaussianRational::real(hermitian_value(&hermitian, &basis[a], &basis[b]).im().clone())
        });
        Ok(Self { hermitian, form })
    }

    /// `H = Id`.
    pub fn standard(lattice: &LatticeSpec) -> Self {
        Self::new(Matrix::identity(lattice.dim()), lattice).expect("square")
    }

    pub fn hermitian(&self) -> &Matrix {
        &self.hermitian
    }

    /// `E` on the real lattice basis, entries in Q.
    pub fn form(&self) -> &Matrix {
        &self.form
    }

    /// `E` as an integer matrix, if integral.
    pub fn integral_form(&self) -> Option<IntMatrix> {
        IntMatrix::from_matrix(&self.form)
    }

    pub fn riemann_check(&self, lattice: &LatticeSpec) -> RiemannReport {
        let integral = self.integral_form().is_some();
        let basis = lattice.real_basis();
        let e = |v: &[GaussianRational], w: &[GaussianRational]| hermitian_value(&self.hermitian, v, w).im().clone();
        let times_i = |v: &[GaussianRational]| v.iter().map(|x| x.mul_i_pow(1)).collect::<Vec<_>>();
        let j_invariant_compat = basis.iter().all(|v| basis.iter().all(|w| e(&times_i(v), &times_i(w)) == e(v, w)));
        RiemannReport { integral, j_invariant_compat, positive: is_positive_definite(&self.hermitian) }
    }

    /// The type `(d_1 | ... | d_g)` of the polarization.
    pub fn polarization_type(&self) -> Result<Vec<BigInt>> {
        let e = self.integral_form().ok_or_else(|| Error::NotIntegral("E = Im H on the lattice".into()))?;
        // Smith divisors of a skew form come in equal pairs.
        Ok(smith_form(&e).into_iter().step_by(2).collect())
    }

    pub fn is_principal(&self) -> bool {
        self.polarization_type().is_ok_and(|t| t.iter().all(One::is_one))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannReport {
    pub integral: bool,
    pub j_invariant_compat: bool,
    pub positive: bool,
}

impl RiemannReport {
    pub fn all(&self) -> bool {
        self.integral && self.j_invariant_compat && self.positive
    }
}

/// Hermitian with every leading principal minor positive.
pub fn is_positive_definite(h: &Matrix) -> bool {
    if !h.is_square() || *h != h.adjoint() {
        return false;
    }
    (1..=h.rows()).all(|m| {
        let minor = Matrix::from_fn(m, m, |r, c| h.get(r, c).clone());
        let d = minor.det().expect("square");
        d.is_real() && d.re().is_positive()
    })
}

/// Fractional part of each entry, for vectors of rationals.
pub fn reduce_mod1(x: &[Rational]) -> Vec<Rational> {
    x.iter().map(frac).collect()
}

/// Largest denominator used by [`sample_points`].
pub const SAMPLE_DENOMINATOR: i64 = 64;

/// `count` seeded random rational points; each real coordinate is `a/d`
/// with `1 ≤ d ≤ 64`, `0 ≤ a < d`.
pub fn sample_points(seed: u64, dim: usize, count: usize) -> Vec<TorusPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x: Vec<Rational> = (0..2 * dim)
                .map(|_| {
                    let d = rng.gen_range(1..=SAMPLE_DENOMINATOR);
                    Rational::new(BigInt::from(rng.gen_range(0..d)), BigInt::from(d))
                })
                .collect();
            TorusPoint::from_real_coords(&x)
        })
        .collect()
}
