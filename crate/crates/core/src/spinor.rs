//! The spinor module `Δ = Q(i)^(2^k)` and the algebra isomorphism
//! `ρ: C_q(V) → End(Δ)`.
//!
//! Generators are realized by the tensor construction
//! `γ_{2j-1} = Z^{⊗(j-1)} ⊗ X ⊗ I^{⊗(k-j)}`, `γ_{2j} = Z^{⊗(j-1)} ⊗ Y ⊗ I^{⊗(k-j)}`
//! with the Pauli matrices `X`, `Y`, `Z`; generators of negative square are
//! multiplied by `i`. All entries lie in `{0, ±1, ±i}`.

use num_traits::One;

use crate::clifford::{Blade, CliffordElement, GeneratorGroupElement, Phase, Signature};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Matrix};

/// Human-readable tag of the fixed construction, recorded in reports.
pub const CONSTRUCTION: &str = "tensor: gamma(2j-1) = Z^(j-1) (x) X (x) I^(k-j), gamma(2j) = Z^(j-1) (x) Y (x) I^(k-j); i-scaled for negative squares";

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

pub fn pauli_x() -> Matrix {
    Matrix::from_int_rows(&[&[0, 1], &[1, 0]])
}

pub fn pauli_y() -> Matrix {
    Matrix::from_rows(vec![vec![gi(0, 0), gi(0, -1)], vec![gi(0, 1), gi(0, 0)]]).expect("2x2")
}

pub fn pauli_z() -> Matrix {
    Matrix::from_int_rows(&[&[1, 0], &[0, -1]])
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        a.get(r / b.rows(), c / b.cols()) * b.get(r % b.rows(), c % b.cols())
    })
}

/// Images of the generators and of every blade under `ρ`.
#[derive(Clone, Debug)]
pub struct RepresentationTable {
    sig: Signature,
    gamma: Vec<Matrix>,
    // indexed by blade bitmask
    blades: Vec<Matrix>,
}

impl RepresentationTable {
    /// Builds the generator matrices for `sig` (of dimension `2k`, `k ≥ 1`).
    pub fn build(sig: Signature) -> Self {
        let k = sig.k();
        let mut gamma = Vec::with_capacity(2 * k);
        for j in 1..=k {
            for middle in [pauli_x(), pauli_y()] {
                let mut m = Matrix::identity(1);
                for _ in 1..j {
                    m = kron(&m, &pauli_z());
                }
                m = kron(&m, &middle);
                for _ in j..k {
                    m = kron(&m, &Matrix::identity(2));
                }
                let a = gamma.len() + 1;
                if sig.square(a) < 0 {
                    m = m.scale(&GaussianRational::i());
                }
                gamma.push(m);
            }
        }
        let dim = 1 << k;
        let blades = sig
            .blades()
            .map(|b| b.indices().iter().fold(Matrix::identity(dim), |acc, &j| &acc * &gamma[j - 1]))
            .collect();
        Self { sig, gamma, blades }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn k(&self) -> usize {
        self.sig.k()
    }

    /// Complex dimension of `Δ`, `2^k`.
    pub fn spinor_dim(&self) -> usize {
        1 << self.k()
    }

    /// `γ_a` for 1-based `a`.
    pub fn gamma(&self, a: usize) -> &Matrix {
        &self.gamma[a - 1]
    }

    pub fn gammas(&self) -> &[Matrix] {
        &self.gamma
    }

    pub fn blade_image(&self, b: Blade) -> &Matrix {
        &self.blades[b.0 as usize]
    }

    pub fn group_image(&self, g: &GeneratorGroupElement) -> Matrix {
        self.blade_image(g.blade).scale(&g.phase.value())
    }

    /// `ρ(u)`, the linear extension of blade images.
    pub fn rho(&self, u: &CliffordElement) -> Result<Matrix> {
        if u.signature() != self.sig {
            return Err(Error::SignatureMismatch { left: u.signature().to_string(), right: self.sig.to_string() });
        }
        let n = self.spinor_dim();
        let mut out = Matrix::zeros(n, n);
        for (b, c) in u.terms() {
            out = &out + &self.blade_image(*b).scale(c);
        }
        Ok(out)
    }

    /// `γ_aγ_b + γ_bγ_a = 2 δ_ab q_a Id` for every pair.
    pub fn satisfies_clifford_relations(&self) -> bool {
        let n = self.spinor_dim();
        let dim = self.sig.dim();
        (1..=dim).all(|a| {
            (1..=dim).all(|b| {
                let anti = &(self.gamma(a) * self.gamma(b)) + &(self.gamma(b) * self.gamma(a));
                let expected = if a == b {
                    Matrix::identity(n).scale(&GaussianRational::from_int(2 * self.sig.square(a) as i64))
                } else {
                    Matrix::zeros(n, n)
                };
                anti == expected
            })
        })
    }

    /// Rank of the flattened blade images over Q(i); full rank `4^k`
    /// certifies `ρ` is an isomorphism onto `End(Δ)` by dimension count.
    pub fn verify_algebra_iso(&self) -> IsoReport {
        let rows: Vec<_> = self.blades.iter().map(Matrix::flatten).collect();
        let rank = Matrix::from_rows(rows).expect("uniform").rank();
        IsoReport { independent: rank == self.blades.len(), spanning_rank: rank }
    }

    /// Checks `ρ(u*) = ρ(u)†` for `u = e_I` and `u = i·e_I`.
    pub fn verify_unitary(&self) -> UnitaryReport {
        let mut failures = Vec::new();
        for b in self.sig.blades() {
            for phase in [Phase::ONE, Phase::I] {
                let g = GeneratorGroupElement::new(phase, b);
                let u = g.to_element(self.sig);
                let lhs = self.rho(&u.star()).expect("same signature");
                if lhs != self.rho(&u).expect("same signature").adjoint() {
                    failures.push(g);
                }
            }
        }
        UnitaryReport { adjoint_ok: failures.is_empty(), failures, checked: 2 * self.blades.len() }
    }

    /// For `g = v_1 ··· v_m` with unit grade-1 `v_j`, checks `ρ(g)†ρ(g) = Id`,
    /// i.e. that `ρ(g)` preserves the standard Hermitian metric.
    pub fn verify_spin_preserves_h(&self, vectors: &[CliffordElement]) -> Result<bool> {
        let mut g = CliffordElement::one(self.sig);
        for v in vectors {
            let is_vector = v.terms().all(|(b, _)| b.grade() == 1) && !v.is_zero();
            let sq = v.try_mul(v)?.as_scalar();
            let unit = sq.is_some_and(|s| s.is_one() || (-s).is_one());
            if !is_vector || !unit {
                return Err(Error::NotUnitVector(v.to_string()));
            }
            g = g.try_mul(v)?;
        }
        let m = self.rho(&g)?;
        Ok(&m.adjoint() * &m == Matrix::identity(self.spinor_dim()))
    }

    /// True if every blade image has entries in Z[i].
    pub fn blades_gaussian_integral(&self) -> bool {
        self.blades.iter().all(Matrix::is_gaussian_integral)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub independent: bool,
    pub spanning_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryReport {
    pub adjoint_ok: bool,
    pub failures: Vec<GeneratorGroupElement>,
    pub checked: usize,
}

/// Convenience: `ρ(i·1) = i·Id`.
pub fn is_scalar_i(m: &Matrix) -> bool {
    m.is_square() && *m == Matrix::identity(m.rows()).scale(&GaussianRational::i())
}
