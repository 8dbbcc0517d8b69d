//! Endomorphism structure of the spinor torus: rational representations,
//! the rank and index of the image of the integer subring, the splitting
//! into copies of `E_i`, and Clifford multiplication transported along a
//! lattice automorphism.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::action::TorusEndomorphism;
use crate::clifford::{generator_group, Blade, CliffordElement, GeneratorGroupElement, Phase};
use crate::error::{Error, Result};
use crate::exact::{smith_form, GaussianRational, IntMatrix, Matrix, Rational, RowEchelon};
use crate::spinor::{is_scalar_i, RepresentationTable};
use crate::torus::{LatticeSpec, TorusPoint};

/// Orders of automorphisms for which a torus with `τ_a = ζ·Id` splits as a
/// power of a CM elliptic curve.
pub const LANGE_ORDERS: [u32; 3] = [3, 4, 6];

pub const E_I_CURVE: &str = "E_i = C/(Z + iZ), j-invariant 1728";

fn int_part(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

/// `τ_r` of a lattice-frame `ℤ[i]` matrix `B = R + iS` on the real basis
/// `(u_1..u_g, iu_1..iu_g)`: `[[R, −S], [S, R]]`.
pub fn realify(b: &Matrix) -> IntMatrix {
    let g = b.rows();
    IntMatrix::from_fn(2 * g, 2 * g, |r, c| {
        let z = b.get(r % g, c % g);
        match (r < g, c < g) {
            (true, true) | (false, false) => int_part(z.re()),
            (true, false) => -int_part(z.im()),
            (false, true) => int_part(z.im()),
        }
    })
}

/// Integer matrix of `ρ(h)` on the real lattice basis.
pub fn rational_representation(
    h: &CliffordElement,
    table: &RepresentationTable,
    lattice: &LatticeSpec,
) -> Result<IntMatrix> {
    let endo = TorusEndomorphism::from_element(h, table, lattice)?;
    Ok(realify(endo.lattice_matrix()))
}

/// `det τ_r(h) = |det τ_a(h)|²`.
pub fn determinant_compatible(
    g: &GeneratorGroupElement,
    table: &RepresentationTable,
    lattice: &LatticeSpec,
) -> Result<bool> {
    let endo = TorusEndomorphism::from_group(g, table, lattice)?;
    let analytic = endo.analytic(lattice).det()?;
    let real = realify(endo.lattice_matrix()).det();
    Ok(Rational::from_integer(real) == analytic.norm())
}

/// Images `ρ(e_I)` and `ρ(i·e_I)` together with their rational representations.
#[derive(Clone, Debug)]
pub struct EndoLattice {
    pub generators: Vec<GeneratorGroupElement>,
    /// Lattice-frame matrices (the analytic matrices on the default lattice).
    pub matrices: Vec<Matrix>,
    pub realified: Vec<IntMatrix>,
}

impl EndoLattice {
    pub fn build(table: &RepresentationTable, lattice: &LatticeSpec) -> Result<Self> {
        let sig = table.signature();
        let generators: Vec<GeneratorGroupElement> = [Phase::ONE, Phase::I]
            .into_iter()
            .flat_map(|ph| sig.blades().map(move |b| GeneratorGroupElement::new(ph, b)))
            .collect();
        let mut matrices = Vec::with_capacity(generators.len());
        let mut realified = Vec::with_capacity(generators.len());
        for g in &generators {
            let endo = TorusEndomorphism::from_group(g, table, lattice)?;
            realified.push(realify(endo.lattice_matrix()));
            matrices.push(endo.lattice_matrix().clone());
        }
        Ok(Self { generators, matrices, realified })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `ℤ`-rank of the span of the realified matrices.
    pub fn rank(&self) -> usize {
        let Some(first) = self.realified.first() else { return 0 };
        let mut ech = RowEchelon::new(first.rows() * first.cols());
        for m in &self.realified {
            ech.insert(m.entries().iter().map(|x| GaussianRational::real(Rational::from_integer(x.clone()))).collect());
        }
        ech.rank()
    }

    /// Coordinates of each generator in the `ℤ`-basis of `M_g(ℤ[i])`:
    /// real parts of all entries, then imaginary parts. One row per generator.
    pub fn flattening(&self) -> IntMatrix {
        let rows = self
            .matrices
            .iter()
            .map(|m| {
                let re = m.entries().iter().map(|z| int_part(z.re()));
                let im = m.entries().iter().map(|z| int_part(z.im()));
                re.chain(im).collect()
            })
            .collect();
        IntMatrix::from_big_rows(rows)
    }
}

pub fn endo_rank(table: &RepresentationTable, lattice: &LatticeSpec) -> Result<usize> {
    Ok(EndoLattice::build(table, lattice)?.rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub k: usize,
    pub smith_divisors: Vec<BigInt>,
    /// `None` when the image has lower rank, i.e. infinite index.
    pub index: Option<BigInt>,
}

impl IndexReport {
    pub fn is_surjective(&self) -> bool {
        self.index.as_ref().is_some_and(One::is_one)
    }
}

/// Index of `ρ(ℂ_q(V)_ℤ)` in the lattice-preserving `ℂ`-linear endomorphisms,
/// as abelian groups.
pub fn subring_index(table: &RepresentationTable, lattice: &LatticeSpec) -> Result<IndexReport> {
    let flat = EndoLattice::build(table, lattice)?.flattening();
    Ok(index_of(table.k(), &flat))
}

pub(crate) fn index_of(k: usize, flat: &IntMatrix) -> IndexReport {
    let smith_divisors = smith_form(flat);
    let index = if smith_divisors.iter().any(Zero::is_zero) { None } else { Some(smith_divisors.iter().product()) };
    IndexReport { k, smith_divisors, index }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub automorphism: GeneratorGroupElement,
    pub analytic_matrix: Matrix,
    pub order: u32,
    pub curve: &'static str,
    pub rank: usize,
    /// Identity coordinate splitting, constructed only for the default lattice.
    pub basis_map: Option<Matrix>,
}

/// Certifies `S_Δ ≅ E_i^{2^k}` via the order-4 automorphism `i·1`.
pub fn decomposition_witness(table: &RepresentationTable, lattice: &LatticeSpec) -> Result<DecompositionWitness> {
    let sig = table.signature();
    let g = table.spinor_dim();
    let automorphism = GeneratorGroupElement::new(Phase::I, Blade::SCALAR);
    let endo = TorusEndomorphism::from_group(&automorphism, table, lattice)?;
    let analytic_matrix = endo.analytic(lattice);
    if !is_scalar_i(&analytic_matrix) {
        return Err(Error::WitnessFailed("rho(i) is not i*Id".into()));
    }
    let order = automorphism.order(&sig);
    if !LANGE_ORDERS.contains(&order) {
        return Err(Error::WitnessFailed(format!("automorphism order {order}")));
    }
    let rank = EndoLattice::build(table, lattice)?.rank();
    if rank != 2 * g * g {
        return Err(Error::WitnessFailed(format!("endomorphism rank {rank}, need {}", 2 * g * g)));
    }
    let basis_map = lattice.is_standard().then(|| Matrix::identity(g));
    Ok(DecompositionWitness { automorphism, analytic_matrix, order, curve: E_I_CURVE, rank, basis_map })
}

/// Splits a point into its `E_i` coordinates (default lattice).
pub fn coordinate_projection(p: &TorusPoint) -> Vec<GaussianRational> {
    p.coords().iter().map(GaussianRational::reduce_mod_gaussian_integers).collect()
}

/// Inverse of [`coordinate_projection`].
pub fn coordinate_inclusion(parts: &[GaussianRational]) -> TorusPoint {
    TorusPoint::from_lattice_coords(parts)
}

/// A lattice automorphism `f ∈ GL_g(ℤ[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unimodular {
    f: Matrix,
    f_inv: Matrix,
}

impl Unimodular {
    pub fn new(f: Matrix) -> Result<Self> {
        if !f.is_square() || !f.is_gaussian_integral() {
            return Err(Error::NonUnimodular("f is not a square Z[i] matrix".into()));
        }
        let f_inv = f.inverse().map_err(|_| Error::NonUnimodular("f is singular".into()))?;
        if !f_inv.is_gaussian_integral() {
            return Err(Error::NonUnimodular("f^-1 has entries outside Z[i]".into()));
        }
        Ok(Self { f, f_inv })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.f
    }

    pub fn inverse(&self) -> &Matrix {
        &self.f_inv
    }

    pub fn conjugate(&self, a: &Matrix) -> Result<Matrix> {
        self.f.checked_mul(a)?.checked_mul(&self.f_inv)
    }
}

/// `ρ^f(h) = f·ρ(h)·f⁻¹`.
pub fn transport_multiplication(f: &Matrix, h: &CliffordElement, table: &RepresentationTable) -> Result<Matrix> {
    Unimodular::new(f.clone())?.conjugate(&table.rho(h)?)
}

/// Torus endomorphism of the transported action of `g`.
pub fn transported_endomorphism(
    f: &Unimodular,
    g: &GeneratorGroupElement,
    table: &RepresentationTable,
    lattice: &LatticeSpec,
) -> Result<TorusEndomorphism> {
    TorusEndomorphism::from_analytic(&f.conjugate(&table.group_image(g))?, lattice)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismReport {
    pub checked: usize,
    pub failures: Vec<GeneratorGroupElement>,
}

/// Every group element acts by a lattice automorphism: integral, with an
/// integral inverse given by the group inverse, and `|det|² = 1`.
pub fn verify_automorphism_containment(
    table: &RepresentationTable,
    lattice: &LatticeSpec,
) -> Result<AutomorphismReport> {
    let sig = table.signature();
    let g = table.spinor_dim();
    let id = Matrix::identity(g);
    let mut failures = Vec::new();
    let group = generator_group(&sig);
    for el in &group {
        let ok = match (
            TorusEndomorphism::from_group(el, table, lattice),
            TorusEndomorphism::from_group(&el.inverse(&sig), table, lattice),
        ) {
            (Ok(a), Ok(b)) => {
                a.compose(&b).lattice_matrix() == &id
                    && b.compose(&a).lattice_matrix() == &id
                    && realify(a.lattice_matrix()).det().abs().is_one()
            }
            _ => false,
        };
        if !ok {
            failures.push(*el);
        }
    }
    Ok(AutomorphismReport { checked: group.len(), failures })
}
