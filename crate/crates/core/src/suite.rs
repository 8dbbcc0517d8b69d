//! Runs every verification suite for a range of `k` and assembles a report.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::action::{verify_two_torsion, TorusEndomorphism, TranslationSystem};
use crate::clifford::{blade_mul, generator_group, Blade, CliffordElement, GeneratorGroupElement, Phase, Signature};
use crate::dual::{BundleClass, PicardMap};
use crate::endo::{
    coordinate_inclusion, coordinate_projection, decomposition_witness, determinant_compatible,
    verify_automorphism_containment, EndoLattice, IndexReport, Unimodular,
};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Matrix};
use crate::parse::lattice_to_json;
use crate::report::{Failure, IndexEntry, IndexSection, Meta, SuiteResult, VerificationReport};
use crate::spinor::{RepresentationTable, CONSTRUCTION};
use crate::torus::{sample_points, LatticeSpec, PolarizationData, TorusPoint, DEFAULT_CAP};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100;
/// Largest `k` for exhaustive 2-torsion scans (`2^(2·2^k)` points).
pub const DEFAULT_EXHAUSTIVE_MAX_K: usize = 2;

/// Suite names in execution order, with the statement each one exercises.
pub const SUITES: [(&str, &str); 15] = [
    ("clifford_axioms", "Clifford relations, star involution and the generator group"),
    ("spinor_iso", "spinor representation is an algebra isomorphism onto End(Delta)"),
    ("spinor_unitary", "spinor representation is unitary"),
    ("torus_polarization", "default lattice and Hermitian form give a principally polarized spinor abelian variety"),
    ("translation_systems", "translation system of a generator e_I of order 4"),
    ("translation_systems_mixed_phase", "translation system of a mixed-phase generator i*e_I (extension)"),
    ("two_torsion", "2-torsion points have 2-torsion translation elements with N = M"),
    ("dual_commuting_square", "phi intertwines Clifford multiplication with the induced dual action"),
    ("dual_bundle_system", "Clifford system of line bundles for order-4 generators"),
    ("dual_two_torsion", "2-torsion line bundles have 2-torsion translation bundles with L_N = L_M"),
    ("endo_rank", "endomorphism ring has rank 2n^2"),
    ("automorphisms", "generator group acts by lattice automorphisms"),
    ("decomposition_witness", "spinor abelian variety is isomorphic to a power of E_i"),
    ("transported_action", "Clifford multiplication transported along a lattice automorphism"),
    ("subring_index", "integer subring maps onto the endomorphism ring"),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(n, _)| *n)
}

fn statement(name: &str) -> &'static str {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).unwrap_or("")
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub ks: Vec<usize>,
    /// `None` uses `(2k, 0)` for each `k`.
    pub signature: Option<Signature>,
    /// `None` uses `ℤ[i]^{2^k}`.
    pub lattice: Option<LatticeSpec>,
    pub seed: u64,
    pub cap: u64,
    pub samples: usize,
    /// Empty selects every suite.
    pub suites: Vec<String>,
    pub timings: bool,
    pub exhaustive_max_k: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            ks: vec![1, 2, 3],
            signature: None,
            lattice: None,
            seed: DEFAULT_SEED,
            cap: DEFAULT_CAP,
            samples: DEFAULT_SAMPLES,
            suites: Vec::new(),
            timings: false,
            exhaustive_max_k: DEFAULT_EXHAUSTIVE_MAX_K,
        }
    }
}

impl SuiteConfig {
    pub fn for_k(ks: impl IntoIterator<Item = usize>) -> Self {
        Self { ks: ks.into_iter().collect(), ..Self::default() }
    }

    /// `k` values actually run: a fixed signature or lattice pins `k`.
    pub fn effective_ks(&self) -> Vec<usize> {
        if let Some(s) = &self.signature {
            return vec![s.k()];
        }
        if let Some(l) = &self.lattice {
            return vec![l.dim().trailing_zeros() as usize];
        }
        self.ks.clone()
    }

    pub fn validate(&self) -> Result<()> {
        for name in &self.suites {
            if name != "all" && !suite_names().any(|n| n == name) {
                return Err(Error::Syntax { offset: 0, message: format!("unknown suite '{name}'") });
            }
        }
        if let Some(l) = &self.lattice {
            if !l.dim().is_power_of_two() || l.dim() < 2 {
                return Err(Error::DimensionMismatch { expected: 2, actual: l.dim() });
            }
            if let Some(s) = &self.signature {
                if s.k() != l.dim().trailing_zeros() as usize {
                    return Err(Error::DimensionMismatch { expected: 1 << s.k(), actual: l.dim() });
                }
            }
        }
        if self.effective_ks().iter().any(|&k| k == 0 || k > 15) {
            return Err(Error::InvalidSignature { p: 0, q: 0 });
        }
        Ok(())
    }

    fn selected(&self, name: &str) -> bool {
        self.suites.is_empty() || self.suites.iter().any(|s| s == name || s == "all")
    }
}

/// Shell-quoted replay command for a failure.
fn replay(verb: &str, args: &[(&str, String)]) -> String {
    let mut s = format!("spinav {verb}");
    for (flag, v) in args {
        s.push_str(&format!(" --{flag} '{v}'"));
    }
    s
}

struct Context<'a> {
    cfg: &'a SuiteConfig,
    k: usize,
    sig: Signature,
    table: RepresentationTable,
    lattice: LatticeSpec,
    group: Vec<GeneratorGroupElement>,
    points: Vec<TorusPoint>,
    /// Why torus-level suites cannot run, if they cannot.
    torus_blocked: Option<String>,
    map: Option<PicardMap>,
}

impl<'a> Context<'a> {
    fn new(cfg: &'a SuiteConfig, k: usize) -> Self {
        let sig = cfg.signature.unwrap_or_else(|| Signature::euclidean(k));
        let table = RepresentationTable::build(sig);
        let lattice = cfg.lattice.clone().unwrap_or_else(|| LatticeSpec::standard(k));
        let group = generator_group(&sig);
        let points = sample_points(cfg.seed.wrapping_add(k as u64), 1 << k, cfg.samples);
        let torus_blocked = if !sig.is_positive_definite() {
            Some(format!("signature {sig} is indefinite: the representation is not unitary, so the Hermitian form is not invariant"))
        } else if let Some(b) = sig.blades().find(|&b| {
            TorusEndomorphism::from_group(&GeneratorGroupElement::new(Phase::ONE, b), &table, &lattice).is_err()
        }) {
            Some(format!("lattice is not preserved by rho({b})"))
        } else {
            None
        };
        let map = PicardMap::new(&PolarizationData::standard(&lattice)).ok();
        Self { cfg, k, sig, table, lattice, group, points, torus_blocked, map }
    }

    fn base_args(&self) -> Vec<(&'static str, String)> {
        let mut v = vec![("k", self.k.to_string()), ("signature", format!("{},{}", self.sig.p(), self.sig.q()))];
        if self.cfg.lattice.is_some() {
            v.push(("lattice", "<lattice file>".to_string()));
        }
        v
    }

    fn inputs(&self, verb: &str, extra: &[(&'static str, String)]) -> Vec<(&'static str, String)> {
        let mut args = self.base_args();
        args.extend_from_slice(extra);
        let mut inputs = args.clone();
        inputs.push(("verb", verb.to_string()));
        inputs.push(("replay", replay(verb, &args)));
        inputs
    }

    fn endo(&self, g: &GeneratorGroupElement) -> Option<TorusEndomorphism> {
        TorusEndomorphism::from_group(g, &self.table, &self.lattice).ok()
    }

    fn sample_classes(&self) -> Vec<BundleClass> {
        sample_points(self.cfg.seed.wrapping_add(1000 + self.k as u64), 1 << self.k, self.cfg.samples)
            .iter()
            .map(|p| BundleClass::new(&p.real_coords()))
            .collect()
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> VerificationReport {
    let ks = cfg.effective_ks();
    let mut report = VerificationReport {
        meta: Meta {
            k: ks.clone(),
            signature: cfg.signature.map_or_else(|| "(2k,0)".to_string(), |s| s.to_string()),
            lattice: cfg.lattice.as_ref().map_or_else(|| serde_json::json!("standard"), lattice_to_json),
            seed: cfg.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            representation: CONSTRUCTION.to_string(),
            samples: cfg.samples,
            cap: cfg.cap,
        },
        ..Default::default()
    };
    let mut index_entries = Vec::new();

    for &k in &ks {
        let ctx = Context::new(cfg, k);
        let runners: [(&str, fn(&Context, SuiteResult) -> SuiteResult); 14] = [
            ("clifford_axioms", clifford_axioms),
            ("spinor_iso", spinor_iso),
            ("spinor_unitary", spinor_unitary),
            ("torus_polarization", torus_polarization),
            ("translation_systems", |c, s| translation_systems(c, s, false)),
            ("translation_systems_mixed_phase", |c, s| translation_systems(c, s, true)),
            ("two_torsion", two_torsion),
            ("dual_commuting_square", dual_commuting_square),
            ("dual_bundle_system", dual_bundle_system),
            ("dual_two_torsion", dual_two_torsion),
            ("endo_rank", endo_rank),
            ("automorphisms", automorphisms),
            ("decomposition_witness", decomposition),
            ("transported_action", transported_action),
        ];
        for (name, run) in runners {
            if cfg.selected(name) {
                let start = Instant::now();
                let mut r = run(&ctx, SuiteResult::new(name, k, statement(name)));
                if cfg.timings {
                    r.ms = Some(start.elapsed().as_millis() as u64);
                }
                report.suites.push(r);
            }
        }
        if cfg.selected("subring_index") {
            let start = Instant::now();
            let (mut r, entry) = subring_index(&ctx, SuiteResult::new("subring_index", k, statement("subring_index")));
            if cfg.timings {
                r.ms = Some(start.elapsed().as_millis() as u64);
            }
            report.suites.push(r);
            index_entries.extend(entry);
        }
    }

    let ran = |name: &str| report.suites.iter().any(|s| s.name == name && s.skipped.is_none());
    let mut warnings = Vec::new();
    if ran("translation_systems_mixed_phase") {
        warnings.push(
            "translation_systems_mixed_phase: actors i*e_I lie outside the basis-blade actors the translation statement covers; verified as an extension".into(),
        );
    }
    if ran("automorphisms") {
        warnings.push("automorphisms: the generator group is verified to lie inside Aut(S); equality is governed by subring_index".into());
    }
    for e in &index_entries {
        if e.index != "1" {
            warnings.push(format!(
                "subring_index: k={} index {} > 1; the integer subring maps onto a proper finite-index subring of End(S) for this construction",
                e.k, e.index
            ));
        }
    }
    report.warnings = warnings;
    report.index = IndexSection::from_entries(index_entries);
    report
}

fn clifford_axioms(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    let sig = ctx.sig;
    let n = sig.dim();
    let fail = |what: &str, detail: String| {
        Failure::new([("k", ctx.k.to_string()), ("check", what.to_string())], "holds", detail)
    };
    for a in 1..=n {
        for b in 1..=n {
            let ea = CliffordElement::generator(sig, a).expect("in range");
            let eb = CliffordElement::generator(sig, b).expect("in range");
            let anti = ea.try_mul(&eb).and_then(|x| x.try_add(&eb.try_mul(&ea)?)).expect("same signature");
            let expect = if a == b {
                CliffordElement::scalar(sig, GaussianRational::from_int(2 * sig.square(a) as i64))
            } else {
                CliffordElement::zero(sig)
            };
            r.check(anti == expect, || fail("e_a e_b + e_b e_a = 2 q_a delta_ab", format!("a={a} b={b}: {anti}")));
        }
    }
    let blades: Vec<Blade> = sig.blades().collect();
    for &a in &blades {
        for &b in &blades {
            let ua = CliffordElement::term(sig, a, GaussianRational::from_ints(1, 1));
            let ub = CliffordElement::term(sig, b, GaussianRational::i());
            let lhs = ua.try_mul(&ub).expect("same signature").star();
            let rhs = ub.star().try_mul(&ua.star()).expect("same signature");
            r.check(lhs == rhs, || fail("(uv)* = v* u*", format!("{a}, {b}")));
        }
        let u = CliffordElement::term(sig, a, GaussianRational::from_ints(2, -3));
        r.check(u.star().star() == u, || fail("u** = u", a.to_string()));
    }
    // blade products associate
    if blades.len() <= 64 {
        for &a in &blades {
            for &b in &blades {
                let (s1, ab) = blade_mul(a, b, &sig);
                for &c in &blades {
                    let (s2, abc) = blade_mul(ab, c, &sig);
                    let (t1, bc) = blade_mul(b, c, &sig);
                    let (t2, abc2) = blade_mul(a, bc, &sig);
                    r.check(s1 * s2 == t1 * t2 && abc == abc2, || fail("(ab)c = a(bc)", format!("{a}, {b}, {c}")));
                }
            }
        }
    }
    let group = &ctx.group;
    r.check(group.len() == 4 << (2 * ctx.k), || fail("group order 4*4^k", group.len().to_string()));
    let set: std::collections::HashSet<_> = group.iter().copied().collect();
    for g in group {
        let inv = g.inverse(&sig);
        r.check(g.mul(&inv, &sig) == GeneratorGroupElement::identity(), || fail("g g^-1 = 1", g.to_string()));
        let closed = group.iter().all(|h| set.contains(&g.mul(h, &sig)));
        r.check(closed, || fail("closure", g.to_string()));
        let order = g.order(&sig);
        let expected = if *g == GeneratorGroupElement::identity() {
            1
        } else if g.square(&sig) == GeneratorGroupElement::identity() {
            2
        } else {
            4
        };
        r.check(order == expected, || fail("order", format!("{g}: {order}")));
    }
    r
}

fn spinor_iso(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    let t = &ctx.table;
    let id = Matrix::identity(t.spinor_dim());
    let n = ctx.sig.dim();
    for a in 1..=n {
        for b in 1..=n {
            let anti = &(t.gamma(a) * t.gamma(b)) + &(t.gamma(b) * t.gamma(a));
            let expect = if a == b {
                id.scale(&GaussianRational::from_int(2 * ctx.sig.square(a) as i64))
            } else {
                Matrix::zeros(id.rows(), id.cols())
            };
            r.check(anti == expect, || {
                Failure::new(
                    ctx.inputs("build", &[]).into_iter().chain([("a", a.to_string()), ("b", b.to_string())]),
                    "2 q_a delta_ab Id",
                    anti.to_string(),
                )
            });
        }
    }
    let iso = t.verify_algebra_iso();
    let full = 1usize << (2 * ctx.k);
    r.check(iso.spanning_rank == full, || {
        Failure::new(ctx.inputs("build", &[]), full.to_string(), iso.spanning_rank.to_string())
    });
    r.check(t.blades_gaussian_integral(), || {
        Failure::new(ctx.inputs("build", &[]), "blade images in M(Z[i])", "non-integral entry")
    });
    r
}

fn spinor_unitary(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    r.informational = !ctx.sig.is_positive_definite();
    let t = &ctx.table;
    let u = t.verify_unitary();
    for b in ctx.sig.blades() {
        for phase in [Phase::ONE, Phase::I] {
            let g = GeneratorGroupElement::new(phase, b);
            let ok = !u.failures.contains(&g);
            r.check(ok, || {
                Failure::new(
                    ctx.inputs("build", &[("element", g.to_string())]),
                    "rho(u*) = rho(u)^+",
                    "adjoint mismatch",
                )
            });
        }
    }
    let n = ctx.sig.dim();
    for a in 1..=n {
        for b in a + 1..=n {
            let v = [
                CliffordElement::generator(ctx.sig, a).expect("in range"),
                CliffordElement::generator(ctx.sig, b).expect("in range"),
            ];
            let ok = t.verify_spin_preserves_h(&v).unwrap_or(false);
            r.check(ok, || {
                Failure::new(
                    ctx.inputs("build", &[("element", format!("e{a}*e{b}"))]),
                    "rho(g)^+ rho(g) = Id",
                    "not unitary",
                )
            });
        }
    }
    r
}

fn torus_polarization(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if !ctx.sig.is_positive_definite() {
        return r.skip(ctx.torus_blocked.clone().unwrap_or_default());
    }
    for b in ctx.sig.blades() {
        let ok = ctx.endo(&GeneratorGroupElement::new(Phase::ONE, b)).is_some();
        r.check(ok, || {
            Failure::new(
                ctx.inputs("act", &[("element", b.to_string())]),
                "rho(e_I) preserves the lattice",
                "not preserved",
            )
        });
    }
    let pol = PolarizationData::standard(&ctx.lattice);
    let riemann = pol.riemann_check(&ctx.lattice);
    r.check(riemann.integral, || Failure::new(ctx.inputs("build", &[]), "E integral on the lattice", "non-integral"));
    r.check(riemann.j_invariant_compat, || Failure::new(ctx.inputs("build", &[]), "E(iv, iw) = E(v, w)", "fails"));
    r.check(riemann.positive, || Failure::new(ctx.inputs("build", &[]), "E(iv, v) > 0", "fails"));
    let ty = pol.polarization_type();
    let principal = ty.as_ref().is_ok_and(|t| t.iter().all(One::is_one));
    r.check(principal, || {
        let actual = match &ty {
            Ok(t) => format!("({})", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
            Err(e) => e.to_string(),
        };
        Failure::new(ctx.inputs("build", &[]), "(1,...,1)", actual)
    });
    r
}

fn translation_systems(ctx: &Context, mut r: SuiteResult, mixed: bool) -> SuiteResult {
    if let Some(reason) = &ctx.torus_blocked {
        return r.skip(reason.clone());
    }
    for g in &ctx.group {
        let phase_mixed = g.phase == Phase::I || g.phase == Phase::MINUS_I;
        let order = g.order(&ctx.sig);
        if phase_mixed != mixed || order < 2 {
            continue;
        }
        let Some(endo) = ctx.endo(g) else { continue };
        for p in &ctx.points {
            let sys = TranslationSystem::compute(&endo, order, p);
            let failures = sys.failures(&endo);
            r.check(failures.is_empty(), || {
                Failure::new(
                    ctx.inputs("act", &[("element", g.to_string()), ("point", p.to_string())]),
                    if order == 4 { "order-4 translation system" } else { "N = -M" },
                    format!("failed: {}; M = ({}), N = ({})", failures.join("; "), sys.m, sys.n),
                )
            });
        }
    }
    r
}

fn two_torsion(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = &ctx.torus_blocked {
        return r.skip(reason.clone());
    }
    if ctx.k > ctx.cfg.exhaustive_max_k {
        return r.skip(format!("exhaustive scan limited to k <= {}", ctx.cfg.exhaustive_max_k));
    }
    for g in &ctx.group {
        if g.order(&ctx.sig) < 2 {
            continue;
        }
        let Some(endo) = ctx.endo(g) else { continue };
        match verify_two_torsion(&endo, 1 << ctx.k, ctx.cfg.cap) {
            Ok(rep) => {
                r.checks += rep.checked as u64 - rep.witnesses.len() as u64;
                for w in rep.witnesses {
                    r.check(false, || {
                        Failure::new(
                            ctx.inputs("act", &[("element", g.to_string()), ("point", w.point.to_string())]),
                            "2M = 0 and N = M",
                            format!("M = ({}), N = ({})", w.m, w.n),
                        )
                    });
                }
            }
            Err(e) => return r.skip(e.to_string()),
        }
    }
    r
}

fn dual_blocked(ctx: &Context) -> Option<String> {
    ctx.torus_blocked.clone().or_else(|| ctx.map.is_none().then(|| "polarization is not principal".to_string()))
}

fn dual_commuting_square(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = dual_blocked(ctx) {
        return r.skip(reason);
    }
    let map = ctx.map.as_ref().expect("principal");
    let phis: Vec<BundleClass> = ctx.points.iter().map(|p| map.phi_forward(p).expect("same torus")).collect();
    for (p, l) in ctx.points.iter().zip(&phis) {
        let back = map.phi_inverse(l).expect("principal");
        r.check(&back == p, || {
            Failure::new(ctx.inputs("dual", &[("point", p.to_string())]), p.to_string(), back.to_string())
        });
        r.check(l.order() == p.order(), || {
            Failure::new(ctx.inputs("dual", &[("point", p.to_string())]), p.order().to_string(), l.order().to_string())
        });
    }
    for l in ctx.sample_classes() {
        let round = map.phi_forward(&map.phi_inverse(&l).expect("principal")).expect("same torus");
        r.check(round == l, || {
            Failure::new(ctx.inputs("dual", &[("bundle", l.to_string())]), l.to_string(), round.to_string())
        });
    }
    for g in &ctx.group {
        let Some(endo) = ctx.endo(g) else { continue };
        for (p, l) in ctx.points.iter().zip(&phis) {
            let lhs = map.phi_forward(&endo.apply(p)).expect("same torus");
            let rhs = map.induced_action(&endo, l).expect("principal");
            r.check(lhs == rhs, || {
                Failure::new(
                    ctx.inputs("dual", &[("element", g.to_string()), ("point", p.to_string())]),
                    lhs.to_string(),
                    rhs.to_string(),
                )
            });
        }
    }
    r
}

fn dual_bundle_system(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = dual_blocked(ctx) {
        return r.skip(reason);
    }
    let map = ctx.map.as_ref().expect("principal");
    let classes = ctx.sample_classes();
    for g in &ctx.group {
        if g.order(&ctx.sig) != 4 {
            continue;
        }
        let Some(endo) = ctx.endo(g) else { continue };
        for l in &classes {
            match map.clifford_bundle_system(&endo, 4, l) {
                Ok(sys) => r.check(sys.holds(), || {
                    Failure::new(
                        ctx.inputs("dual", &[("element", g.to_string()), ("bundle", l.to_string())]),
                        "Clifford system of line bundles",
                        format!("failed: {}; L_M = {}, L_N = {}", sys.failures.join("; "), sys.l_m, sys.l_n),
                    )
                }),
                Err(e) => r.check(false, || {
                    Failure::new(
                        ctx.inputs("dual", &[("element", g.to_string()), ("bundle", l.to_string())]),
                        "system computed",
                        e.to_string(),
                    )
                }),
            }
        }
    }
    r
}

fn dual_two_torsion(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = dual_blocked(ctx) {
        return r.skip(reason);
    }
    if ctx.k > ctx.cfg.exhaustive_max_k {
        return r.skip(format!("exhaustive scan limited to k <= {}", ctx.cfg.exhaustive_max_k));
    }
    let map = ctx.map.as_ref().expect("principal");
    for g in &ctx.group {
        if g.order(&ctx.sig) < 2 {
            continue;
        }
        let Some(endo) = ctx.endo(g) else { continue };
        match map.verify_two_torsion_bundles(&endo, ctx.cfg.cap) {
            Ok(rep) => {
                r.checks += rep.checked as u64 - rep.counterexamples.len() as u64;
                for (l, sys) in rep.counterexamples {
                    r.check(false, || {
                        Failure::new(
                            ctx.inputs("dual", &[("element", g.to_string()), ("bundle", l.to_string())]),
                            "L_M of order <= 2 and L_N = L_M",
                            format!("L_M = {}, L_N = {}", sys.l_m, sys.l_n),
                        )
                    });
                }
            }
            Err(e) => return r.skip(e.to_string()),
        }
    }
    r
}

fn endo_rank(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = &ctx.torus_blocked {
        return r.skip(reason.clone());
    }
    let g = ctx.table.spinor_dim();
    match EndoLattice::build(&ctx.table, &ctx.lattice) {
        Ok(el) => {
            let rank = el.rank();
            r.check(rank == 2 * g * g, || {
                Failure::new(ctx.inputs("build", &[]), (2 * g * g).to_string(), rank.to_string())
            });
        }
        Err(e) => r.check(false, || Failure::new(ctx.inputs("build", &[]), "endomorphism lattice", e.to_string())),
    }
    for el in &ctx.group {
        let ok = determinant_compatible(el, &ctx.table, &ctx.lattice).unwrap_or(false);
        r.check(ok, || {
            Failure::new(ctx.inputs("build", &[("element", el.to_string())]), "det tau_r = |det tau_a|^2", "mismatch")
        });
    }
    r
}

fn automorphisms(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = &ctx.torus_blocked {
        return r.skip(reason.clone());
    }
    match verify_automorphism_containment(&ctx.table, &ctx.lattice) {
        Ok(rep) => {
            r.checks += (rep.checked - rep.failures.len()) as u64;
            for g in rep.failures {
                r.check(false, || {
                    Failure::new(
                        ctx.inputs("build", &[("element", g.to_string())]),
                        "invertible lattice endomorphism",
                        "not an automorphism",
                    )
                });
            }
        }
        Err(e) => r.check(false, || Failure::new(ctx.inputs("build", &[]), "containment computed", e.to_string())),
    }
    r
}

fn decomposition(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = &ctx.torus_blocked {
        return r.skip(reason.clone());
    }
    let w = decomposition_witness(&ctx.table, &ctx.lattice);
    r.check(w.is_ok(), || {
        Failure::new(ctx.inputs("build", &[]), "witness", w.as_ref().err().map(ToString::to_string).unwrap_or_default())
    });
    if let Ok(w) = &w {
        r.check(w.basis_map.is_some() || !ctx.lattice.is_standard(), || {
            Failure::new(ctx.inputs("build", &[]), "coordinate splitting", "missing")
        });
    }
    if ctx.lattice.is_standard() {
        for p in &ctx.points {
            let parts = coordinate_projection(p);
            let ok = parts.len() == 1 << ctx.k && coordinate_inclusion(&parts) == *p;
            r.check(ok, || {
                Failure::new(
                    ctx.inputs("act", &[("point", p.to_string())]),
                    "projection then inclusion is the identity",
                    "mismatch",
                )
            });
        }
    }
    r
}

/// `f = Id + (1+i)·E_{12}`, a nontrivial element of `GL(ℤ[i])`.
pub fn default_transport(dim: usize) -> Unimodular {
    let mut f = Matrix::identity(dim);
    f.set(0, 1, GaussianRational::from_ints(1, 1));
    Unimodular::new(f).expect("unipotent")
}

fn transported_action(ctx: &Context, mut r: SuiteResult) -> SuiteResult {
    if let Some(reason) = &ctx.torus_blocked {
        return r.skip(reason.clone());
    }
    let f = default_transport(ctx.table.spinor_dim());
    let exhaustive = ctx.k <= ctx.cfg.exhaustive_max_k;
    for g in &ctx.group {
        let order = g.order(&ctx.sig);
        if order < 2 {
            continue;
        }
        let endo = match f
            .conjugate(&ctx.table.group_image(g))
            .and_then(|a| TorusEndomorphism::from_analytic(&a, &ctx.lattice))
        {
            Ok(e) => e,
            Err(e) => {
                r.check(false, || {
                    Failure::new(
                        ctx.inputs("act", &[("element", g.to_string())]),
                        "transported action preserves the lattice",
                        e.to_string(),
                    )
                });
                continue;
            }
        };
        for p in &ctx.points {
            let sys = TranslationSystem::compute(&endo, order, p);
            let failures = sys.failures(&endo);
            r.check(failures.is_empty(), || {
                Failure::new(
                    ctx.inputs(
                        "act",
                        &[("element", g.to_string()), ("point", p.to_string()), ("transport", f.matrix().to_string())],
                    ),
                    "translation system",
                    failures.join("; "),
                )
            });
        }
        if exhaustive {
            match verify_two_torsion(&endo, 1 << ctx.k, ctx.cfg.cap) {
                Ok(rep) => {
                    r.checks += rep.checked as u64 - rep.witnesses.len() as u64;
                    for w in rep.witnesses {
                        r.check(false, || {
                            Failure::new(
                                ctx.inputs("act", &[("element", g.to_string()), ("point", w.point.to_string())]),
                                "2M = 0 and N = M",
                                format!("M = ({}), N = ({})", w.m, w.n),
                            )
                        });
                    }
                }
                Err(e) => r.check(false, || Failure::new(ctx.inputs("torsion", &[]), "scan", e.to_string())),
            }
        }
    }
    r
}

fn subring_index(ctx: &Context, mut r: SuiteResult) -> (SuiteResult, Option<IndexEntry>) {
    if let Some(reason) = &ctx.torus_blocked {
        return (r.skip(reason.clone()), None);
    }
    let flat = match EndoLattice::build(&ctx.table, &ctx.lattice) {
        Ok(el) => el.flattening(),
        Err(e) => {
            r.check(false, || Failure::new(ctx.inputs("build", &[]), "endomorphism lattice", e.to_string()));
            return (r, None);
        }
    };
    let rep: IndexReport = crate::endo::index_of(ctx.k, &flat);
    // independent value: |det| of the flattening by fraction-free elimination
    let det = flat.det().abs();
    let computed = rep.index.clone().unwrap_or_default();
    r.check(computed == det, || Failure::new(ctx.inputs("build", &[]), det.to_string(), computed.to_string()));
    let nonzero = rep.index.is_some();
    r.check(nonzero, || Failure::new(ctx.inputs("build", &[]), "full rank", "singular flattening"));
    let entry = IndexEntry {
        k: ctx.k,
        smith_divisors: rep.smith_divisors.iter().map(BigInt::to_string).collect(),
        index: rep.index.as_ref().map_or_else(|| "infinite".to_string(), BigInt::to_string),
    };
    (r, Some(entry))
}
