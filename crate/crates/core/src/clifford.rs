//! The complex Clifford algebra of a `2k`-dimensional quadratic space.
//!
//! Blades are bitmasks (bit `j-1` is generator `e_j`), so the canonical
//! increasing-index order of a blade is the bit order. Elements are sparse
//! maps from blades to Q(i) coefficients with zeros evicted on every write.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::GaussianRational;

/// `(p, q)`: the first `p` generators square to `+1`, the remaining `q` to `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n == 0 || n % 2 != 0 || n > 30 {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Self { p, q })
    }

    /// The default positive-definite signature `(2k, 0)`.
    pub fn euclidean(k: usize) -> Self {
        Self::new(2 * k, 0).expect("k >= 1")
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of generators `2k`.
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn k(&self) -> usize {
        self.dim() / 2
    }

    pub fn is_positive_definite(&self) -> bool {
        self.q == 0
    }

    /// Square of generator `e_j` (1-based).
    pub fn square(&self, j: usize) -> i8 {
        if j <= self.p {
            1
        } else {
            -1
        }
    }

    /// Number of blades, `2^(2k)`.
    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        (0..self.blade_count() as u32).map(Blade)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A basis blade `e_I`, encoded as a bitmask over the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade from 1-based generator indices in any order; repeated indices
    /// cancel. Use [`CliffordElement::product_of_generators`] when the sign
    /// of the reordering matters.
    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0, |m, &j| m ^ (1 << (j - 1))))
    }

    pub fn generator(j: usize) -> Self {
        Blade(1 << (j - 1))
    }

    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based generator indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn is_valid_for(&self, sig: &Signature) -> bool {
        (self.0 as u64) < (1u64 << sig.dim())
    }

    /// Sign `(-1)^(g(g-1)/2)` picked up under reversion.
    pub fn reversion_sign(&self) -> i8 {
        let g = self.grade();
        if (g * g.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `e_I² = (-1)^(g(g-1)/2) · Π_{j∈I} q_j`.
    pub fn square_sign(&self, sig: &Signature) -> i8 {
        self.indices().iter().fold(self.reversion_sign(), |s, &j| s * sig.square(j))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|j| format!("e{j}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Product of two blades: `e_a · e_b = sign · e_{a Δ b}`.
pub fn blade_mul(a: Blade, b: Blade, sig: &Signature) -> (i8, Blade) {
    // Each generator of `b` moves left past every larger generator of `a`.
    let mut swaps = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a.0 >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
    let common = Blade(a.0 & b.0);
    for j in common.indices() {
        sign *= sig.square(j);
    }
    (sign, Blade(a.0 ^ b.0))
}

/// An element `Σ u_I e_I` of the complexified Clifford algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    sig: Signature,
    terms: BTreeMap<Blade, GaussianRational>,
}

impl CliffordElement {
    pub fn zero(sig: Signature) -> Self {
        Self { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: GaussianRational) -> Self {
        Self::term(sig, Blade::SCALAR, c)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, GaussianRational::one())
    }

    pub fn blade(sig: Signature, blade: Blade) -> Self {
        Self::term(sig, blade, GaussianRational::one())
    }

    pub fn term(sig: Signature, blade: Blade, c: GaussianRational) -> Self {
        let mut e = Self::zero(sig);
        e.add_term(blade, c);
        e
    }

    /// Generator `e_j`, checked against the signature.
    pub fn generator(sig: Signature, j: usize) -> Result<Self> {
        if j == 0 || j > sig.dim() {
            return Err(Error::IndexOutOfRange { index: j, dim: sig.dim() });
        }
        Ok(Self::blade(sig, Blade::generator(j)))
    }

    /// Ordered product `e_{j1} e_{j2} ...` of generators.
    pub fn product_of_generators(sig: Signature, indices: &[usize]) -> Result<Self> {
        indices.iter().try_fold(Self::one(sig), |acc, &j| acc.try_mul(&Self::generator(sig, j)?))
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: Blade) -> GaussianRational {
        self.terms.get(&blade).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·e_I`, evicting the entry if it cancels to zero.
    pub fn add_term(&mut self, blade: Blade, c: GaussianRational) {
        assert!(blade.is_valid_for(&self.sig), "blade {blade} out of range for {}", self.sig);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(blade).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&blade);
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch { left: self.sig.to_string(), right: other.sig.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.terms {
            out.add_term(*b, c * s);
        }
        out
    }

    /// Clifford product, the bilinear extension of [`blade_mul`].
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (sign, blade) = blade_mul(*a, *b, &self.sig);
                let c = x * y;
                out.add_term(blade, if sign > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.sig), |acc, _| acc.try_mul(self).expect("same signature"))
    }

    /// The grade-`g` part `⟨u⟩_g`.
    pub fn grade_project(&self, grade: usize) -> Self {
        Self {
            sig: self.sig,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == grade).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    /// Conjugate reversion `u* = conj(reverse(u))`.
    pub fn star(&self) -> Self {
        Self {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, if b.reversion_sign() > 0 { c.conj() } else { -c.conj() }))
                .collect(),
        }
    }

    /// Membership in the Gaussian-integer subring: every coefficient in Z[i].
    pub fn in_integer_subring(&self) -> bool {
        self.terms.values().all(GaussianRational::is_gaussian_integer)
    }

    /// The scalar value if the element has no blade part of positive grade.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Blade::SCALAR).cloned(),
            _ => None,
        }
    }
}

/// Canonical expression syntax accepted by [`crate::parse::parse_element`].
impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| match (b.0, c.is_one()) {
                (0, _) => format!("({c})"),
                (_, true) => b.to_string(),
                _ => format!("({c})*{b}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A fourth root of unity, stored as the exponent of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_i_power(n: u8) -> Self {
        Phase(n % 4)
    }

    pub fn i_power(&self) -> u8 {
        self.0
    }

    pub fn mul(self, o: Phase) -> Phase {
        Phase((self.0 + o.0) % 4)
    }

    pub fn from_sign(s: i8) -> Phase {
        if s > 0 {
            Phase::ONE
        } else {
            Phase::MINUS_ONE
        }
    }

    pub fn value(&self) -> GaussianRational {
        GaussianRational::one().mul_i_pow(self.0)
    }
}

/// An element `phase · e_I` of the finite group `{±e_I, ±i e_I}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorGroupElement {
    pub blade: Blade,
    pub phase: Phase,
}

impl GeneratorGroupElement {
    pub fn new(phase: Phase, blade: Blade) -> Self {
        Self { blade, phase }
    }

    pub fn identity() -> Self {
        Self::new(Phase::ONE, Blade::SCALAR)
    }

    pub fn mul(&self, o: &Self, sig: &Signature) -> Self {
        let (sign, blade) = blade_mul(self.blade, o.blade, sig);
        Self::new(self.phase.mul(o.phase).mul(Phase::from_sign(sign)), blade)
    }

    pub fn square(&self, sig: &Signature) -> Self {
        self.mul(self, sig)
    }

    pub fn inverse(&self, sig: &Signature) -> Self {
        // g^4 = 1 always, so g^-1 = g^3.
        self.square(sig).mul(self, sig)
    }

    /// Multiplicative order: 1, 2 or 4.
    pub fn order(&self, sig: &Signature) -> u32 {
        if *self == Self::identity() {
            return 1;
        }
        let sq = self.square(sig);
        // sq is ±1 times the scalar blade
        if sq == Self::identity() {
            2
        } else {
            4
        }
    }

    pub fn to_element(&self, sig: Signature) -> CliffordElement {
        CliffordElement::term(sig, self.blade, self.phase.value())
    }
}

impl fmt::Display for GeneratorGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase.0 {
            0 => "",
            1 => "i*",
            2 => "-",
            _ => "-i*",
        };
        if self.blade == Blade::SCALAR {
            match self.phase.0 {
                0 => write!(f, "1"),
                1 => write!(f, "i"),
                2 => write!(f, "-1"),
                _ => write!(f, "-i"),
            }
        } else {
            write!(f, "{prefix}{}", self.blade)
        }
    }
}

/// Multiplicative order of `g` in the generator group.
pub fn element_order(g: &GeneratorGroupElement, sig: &Signature) -> u32 {
    g.order(sig)
}

/// All `4 · 2^(2k)` elements, ordered by blade then phase.
pub fn generator_group(sig: &Signature) -> Vec<GeneratorGroupElement> {
    sig.blades().flat_map(|b| (0..4).map(move |p| GeneratorGroupElement::new(Phase::from_i_power(p), b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use std::collections::HashSet;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(1, 0).is_err());
        assert!(Signature::new(0, 0).is_err());
        assert_eq!(Signature::new(1, 1).unwrap().k(), 1);
    }

    #[test]
    fn blade_products() {
        let s = sig(2, 0);
        let (e1, e2, e12) = (Blade::generator(1), Blade::generator(2), Blade(0b11));
        assert_eq!(blade_mul(e1, e2, &s), (1, e12));
        assert_eq!(blade_mul(e2, e1, &s), (-1, e12));
        assert_eq!(blade_mul(e12, e12, &s), (-1, Blade::SCALAR));
    }

    #[test]
    fn blade_square_matches_formula() {
        for s in [sig(4, 0), sig(2, 2), sig(1, 3)] {
            for b in s.blades() {
                let (sign, r) = blade_mul(b, b, &s);
                assert_eq!(r, Blade::SCALAR);
                assert_eq!(sign, b.square_sign(&s), "{b} in {s}");
            }
        }
    }

    #[test]
    fn element_products() {
        let s = sig(2, 0);
        let e1 = CliffordElement::generator(s, 1).unwrap();
        let one = CliffordElement::one(s);
        let a = one.try_add(&e1).unwrap();
        let b = one.try_sub(&e1).unwrap();
        assert!(a.try_mul(&b).unwrap().is_zero());

        let i = CliffordElement::scalar(s, GaussianRational::i());
        assert_eq!(i.try_mul(&i).unwrap(), CliffordElement::scalar(s, gi(-1, 0)));

        let s4 = sig(4, 0);
        let [e1, e2, e3] = [1, 2, 3].map(|j| CliffordElement::generator(s4, j).unwrap());
        let left = e1.try_mul(&e2.try_mul(&e3).unwrap()).unwrap();
        let right = e1.try_mul(&e2).unwrap().try_mul(&e3).unwrap();
        assert_eq!(left, right);
        assert_eq!(left, CliffordElement::blade(s4, Blade(0b111)));
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let a = CliffordElement::one(sig(2, 0));
        let b = CliffordElement::one(sig(4, 0));
        assert!(matches!(a.try_mul(&b), Err(Error::SignatureMismatch { .. })));
        assert!(matches!(a.try_add(&b), Err(Error::SignatureMismatch { .. })));
    }

    #[test]
    fn grade_projection() {
        let s = sig(2, 0);
        let mut u = CliffordElement::scalar(s, gi(1, 0));
        u.add_term(Blade(0b01), gi(2, 0));
        u.add_term(Blade(0b11), gi(3, 0));
        assert_eq!(u.grade_project(1), CliffordElement::term(s, Blade(0b01), gi(2, 0)));
        assert!(CliffordElement::blade(s, Blade(0b11)).grade_project(0).is_zero());
    }

    #[test]
    fn star_examples() {
        let s = sig(2, 0);
        let e12 = CliffordElement::blade(s, Blade(0b11));
        assert_eq!(e12.star(), e12.neg());
        let ie12 = e12.scale(&GaussianRational::i());
        assert_eq!(ie12.star(), ie12);
        let e1 = CliffordElement::generator(s, 1).unwrap();
        assert_eq!(e1.star(), e1);
    }

    #[test]
    fn orders() {
        let s = sig(2, 0);
        let e1 = GeneratorGroupElement::new(Phase::ONE, Blade(0b01));
        let e12 = GeneratorGroupElement::new(Phase::ONE, Blade(0b11));
        let ie1 = GeneratorGroupElement::new(Phase::I, Blade(0b01));
        assert_eq!(element_order(&e1, &s), 2);
        assert_eq!(element_order(&e12, &s), 4);
        assert_eq!(element_order(&ie1, &s), 4);
        assert_eq!(element_order(&GeneratorGroupElement::identity(), &s), 1);
        assert_eq!(element_order(&GeneratorGroupElement::new(Phase::MINUS_ONE, Blade::SCALAR), &s), 2);
    }

    #[test]
    fn generator_group_is_a_group() {
        for k in 1..=2 {
            let s = Signature::euclidean(k);
            let g = generator_group(&s);
            assert_eq!(g.len(), 4 << (2 * k));
            let set: HashSet<_> = g.iter().copied().collect();
            assert_eq!(set.len(), g.len());
            for a in &g {
                assert_eq!(a.mul(&a.inverse(&s), &s), GeneratorGroupElement::identity());
                for b in &g {
                    let ab = a.mul(b, &s);
                    assert!(set.contains(&ab));
                    // group product agrees with the algebra product
                    let lhs = a.to_element(s).try_mul(&b.to_element(s)).unwrap();
                    assert_eq!(lhs, ab.to_element(s));
                }
            }
        }
    }

    #[test]
    fn integer_subring_membership() {
        let s = sig(2, 0);
        let mut u = CliffordElement::term(s, Blade(0b01), gi(1, 1));
        u.add_term(Blade(0b11), gi(3, 0));
        assert!(u.in_integer_subring());
        let half = CliffordElement::term(s, Blade(0b01), GaussianRational::real(ratio(1, 2)));
        assert!(!half.in_integer_subring());
        assert!(CliffordElement::scalar(s, GaussianRational::i()).in_integer_subring());
    }

    #[test]
    fn zero_coefficients_are_evicted() {
        let s = sig(2, 0);
        let mut u = CliffordElement::blade(s, Blade(0b10));
        u.add_term(Blade(0b10), gi(-1, 0));
        assert!(u.is_empty());
    }
}
