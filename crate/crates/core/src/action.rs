//! Clifford multiplication on `S_Δ` and its translation elements.
//!
//! An integral element `h` acts on the torus through `ρ(h)` once that matrix
//! preserves `Γ_Δ`; in lattice coordinates the action is a Z[i] matrix. The
//! translation elements of an actor at a point `p` are the differences
//! `M = ρ̂p − p` and `N = ρ̂²p − ρ̂p`.

use crate::clifford::{CliffordElement, GeneratorGroupElement};
use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::spinor::RepresentationTable;
use crate::torus::{torsion_points, LatticeSpec, TorusPoint};

/// An endomorphism of `S_Δ`, stored as its Z[i] matrix in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusEndomorphism {
    matrix: Matrix,
}

impl TorusEndomorphism {
    /// From an analytic matrix acting on `Δ`.
    pub fn from_analytic(a: &Matrix, lattice: &LatticeSpec) -> Result<Self> {
        let matrix = lattice.to_lattice_frame(a);
        if !matrix.is_gaussian_integral() {
            return Err(Error::LatticeNotPreserved(format!("matrix\n{a}")));
        }
        Ok(Self { matrix })
    }

    /// Clifford multiplication by `h`.
    pub fn from_element(h: &CliffordElement, table: &RepresentationTable, lattice: &LatticeSpec) -> Result<Self> {
        if !h.in_integer_subring() {
            return Err(Error::NotIntegral(h.to_string()));
        }
        let matrix = lattice.to_lattice_frame(&table.rho(h)?);
        if !matrix.is_gaussian_integral() {
            return Err(Error::LatticeNotPreserved(h.to_string()));
        }
        Ok(Self { matrix })
    }

    pub fn from_group(g: &GeneratorGroupElement, table: &RepresentationTable, lattice: &LatticeSpec) -> Result<Self> {
        Self::from_element(&g.to_element(table.signature()), table, lattice)
    }

    /// Matrix in lattice coordinates.
    pub fn lattice_matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// The analytic representation `P·B·P⁻¹`.
    pub fn analytic(&self, lattice: &LatticeSpec) -> Matrix {
        lattice.from_lattice_frame(&self.matrix)
    }

    pub fn apply(&self, p: &TorusPoint) -> TorusPoint {
        TorusPoint::from_lattice_coords(&self.matrix.apply(p.coords()).expect("dimension"))
    }

    pub fn apply_n(&self, p: &TorusPoint, n: u32) -> TorusPoint {
        (0..n).fold(p.clone(), |q, _| self.apply(&q))
    }

    pub fn compose(&self, inner: &Self) -> Self {
        Self { matrix: &self.matrix * &inner.matrix }
    }
}

/// `ρ(h)` preserves `Γ_Δ`: `P⁻¹ρ(h)P` has Z[i] entries.
pub fn preserves_lattice(h: &CliffordElement, table: &RepresentationTable, lattice: &LatticeSpec) -> bool {
    table.rho(h).is_ok_and(|m| lattice.to_lattice_frame(&m).is_gaussian_integral())
}

/// Clifford multiplication of `p` by the integral element `h`.
pub fn act(
    h: &CliffordElement,
    p: &TorusPoint,
    table: &RepresentationTable,
    lattice: &LatticeSpec,
) -> Result<TorusPoint> {
    if p.dim() != lattice.dim() {
        return Err(Error::LatticeMismatch);
    }
    Ok(TorusEndomorphism::from_element(h, table, lattice)?.apply(p))
}

/// Translation elements of an actor of order `order` at `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationSystem {
    pub base: TorusPoint,
    pub m: TorusPoint,
    pub n: TorusPoint,
    pub order: u32,
}

impl TranslationSystem {
    pub fn compute(endo: &TorusEndomorphism, order: u32, base: &TorusPoint) -> Self {
        let once = endo.apply(base);
        let twice = endo.apply(&once);
        Self {
            base: base.clone(),
            m: once.sub(base).expect("same torus"),
            n: twice.sub(&once).expect("same torus"),
            order,
        }
    }

    /// Names of the identities that fail; empty when the system holds.
    ///
    /// Order 4: `ρ̂p = p+M`, `ρ̂²p = p+M+N`, `ρ̂³p = p+N`, `ρ̂⁴p = p` and
    /// `2p + M + N = 0`. Order 2: `ρ̂p = p+M`, `ρ̂²p = p`, `N = −M`.
    /// Order 1: `M = N = 0`.
    pub fn failures(&self, endo: &TorusEndomorphism) -> Vec<&'static str> {
        let p = &self.base;
        let add = |a: &TorusPoint, b: &TorusPoint| a.add(b).expect("same torus");
        let mut powers = Vec::with_capacity(4);
        let mut q = p.clone();
        for _ in 0..4 {
            q = endo.apply(&q);
            powers.push(q.clone());
        }
        let mut out = Vec::new();
        let mut check = |ok: bool, name: &'static str| {
            if !ok {
                out.push(name);
            }
        };
        match self.order {
            4 => {
                check(powers[0] == add(p, &self.m), "rho(p) = p + M");
                check(powers[1] == add(&add(p, &self.m), &self.n), "rho^2(p) = p + M + N");
                check(powers[2] == add(p, &self.n), "rho^3(p) = p + N");
                check(powers[3] == *p, "rho^4(p) = p");
                check(add(&p.times(2), &add(&self.m, &self.n)).is_origin(), "2p + M + N = 0");
            }
            2 => {
                check(powers[0] == add(p, &self.m), "rho(p) = p + M");
                check(powers[1] == *p, "rho^2(p) = p");
                check(self.n == self.m.neg(), "N = -M");
            }
            _ => {
                check(self.m.is_origin() && self.n.is_origin(), "M = N = 0");
            }
        }
        out
    }
}

/// Translation elements of the generator-group element `g` at `p`.
pub fn translation_elements(
    g: &GeneratorGroupElement,
    p: &TorusPoint,
    table: &RepresentationTable,
    lattice: &LatticeSpec,
) -> Result<TranslationSystem> {
    let endo = TorusEndomorphism::from_group(g, table, lattice)?;
    Ok(TranslationSystem::compute(&endo, g.order(&table.signature()), p))
}

/// A 2-torsion point where `2M = 0` or `N = M` failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTorsionWitness {
    pub point: TorusPoint,
    pub m: TorusPoint,
    pub n: TorusPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTorsionReport {
    pub all_pass: bool,
    pub checked: usize,
    /// Counterexamples; empty when `all_pass`.
    pub witnesses: Vec<TwoTorsionWitness>,
}

/// Scans every 2-torsion point `ε` and checks `2M = 0` and `N = M`.
pub fn verify_two_torsion(endo: &TorusEndomorphism, dim: usize, cap: u64) -> Result<TwoTorsionReport> {
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for eps in torsion_points(2, dim, cap)? {
        // order only affects `failures`, not M and N
        let sys = TranslationSystem::compute(endo, 2, &eps);
        if !(sys.m.times(2).is_origin() && sys.n == sys.m) {
            witnesses.push(TwoTorsionWitness { point: eps, m: sys.m, n: sys.n });
        }
        checked += 1;
    }
    Ok(TwoTorsionReport { all_pass: witnesses.is_empty(), checked, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Blade, Phase, Signature};
    use crate::exact::GaussianRational;
    use crate::torus::{reduce, DEFAULT_CAP};

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn pt(coords: &[&str]) -> TorusPoint {
        TorusPoint::from_lattice_coords(&coords.iter().map(|s| g(s)).collect::<Vec<_>>())
    }

    fn setup(k: usize) -> (RepresentationTable, LatticeSpec) {
        (RepresentationTable::build(Signature::euclidean(k)), LatticeSpec::standard(k))
    }

    #[test]
    fn act_examples() {
        let (t, l) = setup(1);
        let s = t.signature();
        let p = pt(&["1/4", "0"]);
        assert_eq!(act(&CliffordElement::one(s), &p, &t, &l).unwrap(), p);
        let e12 = CliffordElement::blade(s, Blade(0b11));
        assert_eq!(act(&e12, &p, &t, &l).unwrap(), pt(&["1/4i", "0"]));
        let i = CliffordElement::scalar(s, GaussianRational::i());
        assert_eq!(act(&i, &pt(&["1/2", "0"]), &t, &l).unwrap(), pt(&["1/2i", "0"]));
    }

    #[test]
    fn act_rejects_non_integral() {
        let (t, l) = setup(1);
        let half = CliffordElement::term(t.signature(), Blade(0b01), g("1/2"));
        assert!(matches!(act(&half, &pt(&["0", "0"]), &t, &l), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn preservation() {
        let (t, l) = setup(1);
        let s = t.signature();
        for b in s.blades() {
            assert!(preserves_lattice(&CliffordElement::blade(s, b), &t, &l));
        }
        let half = CliffordElement::term(s, Blade(0b01), g("1/2"));
        assert!(!preserves_lattice(&half, &t, &l));

        let skewed = LatticeSpec::new(Matrix::diagonal(&[g("2"), g("1")])).unwrap();
        let e1 = CliffordElement::generator(s, 1).unwrap();
        assert!(!preserves_lattice(&e1, &t, &skewed));
        assert!(matches!(act(&e1, &pt(&["0", "0"]), &t, &skewed), Err(Error::LatticeNotPreserved(_))));
    }

    #[test]
    fn translation_example_order_four() {
        let (t, l) = setup(1);
        let e12 = GeneratorGroupElement::new(Phase::ONE, Blade(0b11));
        let sys = translation_elements(&e12, &pt(&["1/4", "0"]), &t, &l).unwrap();
        assert_eq!(sys.order, 4);
        assert_eq!(sys.m, pt(&["3/4+1/4i", "0"]));
        assert_eq!(sys.n, pt(&["3/4+3/4i", "0"]));
        let endo = TorusEndomorphism::from_group(&e12, &t, &l).unwrap();
        assert!(sys.failures(&endo).is_empty());
    }

    #[test]
    fn origin_is_fixed() {
        let (t, l) = setup(1);
        let e12 = GeneratorGroupElement::new(Phase::ONE, Blade(0b11));
        let sys = translation_elements(&e12, &TorusPoint::origin(2), &t, &l).unwrap();
        assert!(sys.m.is_origin() && sys.n.is_origin());
    }

    #[test]
    fn translation_by_scalar_i() {
        let (t, l) = setup(1);
        let i = GeneratorGroupElement::new(Phase::I, Blade::SCALAR);
        let sys = translation_elements(&i, &pt(&["1/4", "0"]), &t, &l).unwrap();
        assert_eq!(sys.m, pt(&["-1/4+1/4i", "0"]));
        let endo = TorusEndomorphism::from_group(&i, &t, &l).unwrap();
        assert!(sys.failures(&endo).is_empty());
    }

    #[test]
    fn order_two_degenerate_system() {
        let (t, l) = setup(2);
        let e1 = GeneratorGroupElement::new(Phase::ONE, Blade(0b0001));
        let endo = TorusEndomorphism::from_group(&e1, &t, &l).unwrap();
        for p in crate::torus::sample_points(3, 4, 20) {
            let sys = TranslationSystem::compute(&endo, 2, &p);
            assert!(sys.failures(&endo).is_empty());
        }
    }

    #[test]
    fn two_torsion_k1() {
        let (t, l) = setup(1);
        let e12 = GeneratorGroupElement::new(Phase::ONE, Blade(0b11));
        let sys = translation_elements(&e12, &pt(&["1/2", "0"]), &t, &l).unwrap();
        assert_eq!(sys.m, pt(&["1/2+1/2i", "0"]));
        assert_eq!(sys.n, sys.m);
        let endo = TorusEndomorphism::from_group(&e12, &t, &l).unwrap();
        let report = verify_two_torsion(&endo, 2, DEFAULT_CAP).unwrap();
        assert!(report.all_pass);
        assert_eq!(report.checked, 16);
    }

    #[test]
    fn two_torsion_k2_pseudoscalar() {
        let (t, l) = setup(2);
        let top = GeneratorGroupElement::new(Phase::ONE, Blade(0b1111));
        let endo = TorusEndomorphism::from_group(&top, &t, &l).unwrap();
        let report = verify_two_torsion(&endo, 4, DEFAULT_CAP).unwrap();
        assert!(report.all_pass);
        assert_eq!(report.checked, 256);
    }

    #[test]
    fn losing_the_hat() {
        // act(h, reduce(v)) = reduce(ρ(h) v)
        let (t, l) = setup(2);
        let s = t.signature();
        let h = CliffordElement::blade(s, Blade(0b0110)).scale(&g("2-i"));
        let v: Vec<_> = ["7/3-1/5i", "1/2", "-9/4+2i", "5/6i"].iter().map(|x| g(x)).collect();
        let lhs = act(&h, &reduce(&v, &l).unwrap(), &t, &l).unwrap();
        let rhs = reduce(&t.rho(&h).unwrap().apply(&v).unwrap(), &l).unwrap();
        assert_eq!(lhs, rhs);
    }
}
