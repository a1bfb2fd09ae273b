//! The self-test grid: every acceptance criterion as a list of threshold
//! checks, plus the audit tables that are reported without a verdict.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ChiConvention, FnId, FnTable};
use crate::error::Result;
use crate::fine::{fine_scan, fine_sum, FineMethod, FineReport, FineSpec, Frequency};
use crate::identities::{
    asymptotic_probe, cross_check_popov_thm11, verify_eq34, verify_lemma31, verify_lemma32, verify_popov,
    verify_popov_with_zeros, verify_theorem11, verify_theorem12, verify_theorem31, AsymptoticModel, IdentityReport,
    ProbeRow, SignConvention, VerifyConfig, Workspace,
};
use crate::fine::{ramanujan_cos_sum, sin2_sum};
use crate::quad::Phi;
use crate::series::{davenport_sine, frac_series_lhs, relative_difference, sincos_series, Rational};
use crate::summation::TruncationSpec;
use crate::tolerances as tol;
use crate::zeta::ZeroTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    /// Truncation `10⁷`, Cesàro series at `10⁶`.
    Full,
    /// Truncation `10⁶` throughout; thresholds widen to each report's own bound.
    Quick,
}

impl Scale {
    pub fn n_max(&self) -> u64 {
        match self {
            Scale::Full => 10_000_000,
            Scale::Quick => 1_000_000,
        }
    }

    pub fn cesaro_n_max(&self) -> u64 {
        1_000_000
    }

    /// Increasing truncations for the trend checks, ending at [`Self::cesaro_n_max`].
    pub fn trend(&self) -> [u64; 3] {
        [10_000, 100_000, 1_000_000]
    }

    fn threshold(&self, pinned: f64, bound: f64) -> f64 {
        match self {
            Scale::Full => pinned,
            Scale::Quick => pinned.max(bound),
        }
    }
}

/// One thresholded measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(criterion: u8, name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { criterion, name: name.into(), value, threshold, pass: value <= threshold }
    }

    /// A yes/no condition, recorded as value 0 (holds) or 1.
    pub fn holds(criterion: u8, name: impl Into<String>, ok: bool) -> Self {
        Self { criterion, name: name.into(), value: if ok { 0.0 } else { 1.0 }, threshold: 0.0, pass: ok }
    }
}

/// Everything a criterion produced.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub checks: Vec<Check>,
    pub reports: Vec<IdentityReport>,
    pub fine: Vec<FineReport<f64>>,
}

impl Section {
    fn check(&mut self, c: Check) {
        self.checks.push(c);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiAuditRow {
    pub spec: String,
    pub n: u64,
    pub corrected: f64,
    pub literal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyAuditRow {
    pub spec: String,
    pub n: u64,
    pub two_pi: f64,
    pub pi_literal: f64,
}

/// Outputs reported without a pass/fail verdict.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Audits {
    pub d1_moebius: Vec<FineReport<f64>>,
    pub chi_conventions: Vec<ChiAuditRow>,
    pub frequencies: Vec<FrequencyAuditRow>,
    pub corollary_probe: Vec<ProbeRow>,
    pub literal_sign: Vec<IdentityReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfTest {
    pub scale: Scale,
    pub sections: Vec<Section>,
    pub audits: Audits,
}

impl SelfTest {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.sections.iter().flat_map(|s| s.checks.iter())
    }

    pub fn all_pass(&self) -> bool {
        self.checks().all(|c| c.pass)
    }

    /// Fixed-width table, one line per check.
    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<3} {:<6} {:<48} {:>12} {:>12}", "C", "status", "check", "value", "threshold");
        for c in self.checks() {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{:<3} {:<6} {:<48} {:>12.3e} {:>12.3e}", c.criterion, status, c.name, c.value, c.threshold);
        }
        let (pass, total) = (self.checks().filter(|c| c.pass).count(), self.checks().count());
        let _ = writeln!(out, "{pass}/{total} checks pass");
        out
    }
}

/// Inputs shared by the criteria.
pub struct Context<'a> {
    pub ws: &'a Workspace<f64>,
    /// Larger zero table for the refinement check; skipped when absent.
    pub zeros_extra: Option<&'a ZeroTable<f64>>,
    pub scale: Scale,
}

impl<'a> Context<'a> {
    /// Workspace sized for `scale`, with the bundled zero tables.
    pub fn workspace(scale: Scale) -> Result<Workspace<f64>> {
        Ok(Workspace::new(scale.n_max())?.with_zeros(ZeroTable::bundled()))
    }

    fn cfg(&self) -> VerifyConfig {
        VerifyConfig::new(self.scale.n_max())
    }

    /// Builds every table up front so parallel criteria never sieve twice.
    pub fn warm(&self) -> Result<()> {
        for f in [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville] {
            self.ws.pair(f)?;
        }
        Ok(())
    }
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q).expect("grid rationals are valid")
}

fn report_check(criterion: u8, scale: Scale, name: String, rep: &IdentityReport, pinned: f64) -> Check {
    Check::at_most(criterion, name, rep.residual, scale.threshold(pinned, rep.bound))
}

/// Explicit formula at `x ∈ {2, 5, 10}`.
pub fn criterion1(ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let cfg = ctx.cfg();
    for (x, pinned) in [(2, tol::POPOV_X2), (5, tol::POPOV_X5), (10, tol::POPOV_X10)] {
        let rep = verify_popov(ctx.ws, Rational::integer(x), &cfg)?;
        s.check(report_check(1, ctx.scale, format!("popov x={x}"), &rep, pinned));
        if let Some(extra) = ctx.zeros_extra {
            let more = verify_popov_with_zeros(ctx.ws, extra, Rational::integer(x), &cfg)?;
            s.check(Check::at_most(
                1,
                format!("popov x={x} residual with {} zeros", extra.len()),
                more.residual,
                rep.residual,
            ));
            s.reports.push(more);
        }
        s.reports.push(rep);
    }
    Ok(s)
}

pub const THM11_XS: [(i64, i64); 4] = [(2, 1), (5, 2), (7, 3), (15, 2)];

/// Bernoulli-sum identity for Λ, μ, λ.
pub fn criterion2(ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let cfg = ctx.cfg();
    for f in [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville] {
        let pinned = if f == FnId::VonMangoldt { tol::THM11_VON_MANGOLDT } else { tol::THM11_BOUNDED };
        for (p, q) in THM11_XS {
            let x = r(p, q);
            let rep = verify_theorem11(ctx.ws, f, x, &cfg)?;
            s.check(report_check(2, ctx.scale, format!("thm11 {f} x={x}"), &rep, pinned));
            s.check(Check::at_most(2, format!("thm11 {f} x={x} within tail bound"), rep.residual, rep.bound.max(crate::identities::FLOOR_TOL)));
            s.reports.push(rep);
        }
    }
    Ok(s)
}

/// Λ assembly against half the explicit formula.
pub fn criterion3(ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let cfg = ctx.cfg();
    for x in [2, 5, 10] {
        let rep = cross_check_popov_thm11(ctx.ws, Rational::integer(x), &cfg)?;
        let zero_tail = rep.components.get("zero_tail_estimate").copied().unwrap_or(0.0);
        s.check(Check::at_most(3, format!("cross x={x}"), rep.residual, zero_tail));
        s.reports.push(rep);
    }
    Ok(s)
}

/// Fractional-part quadratic identity, including the integer collapse.
pub fn criterion4(ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let cfg = ctx.cfg();
    for f in [FnId::Moebius, FnId::Liouville] {
        for x in [r(1, 3), r(1, 2), r(5, 2)] {
            let rep = verify_theorem12(ctx.ws, f, x, &cfg)?;
            s.check(report_check(4, ctx.scale, format!("thm12 {f} x={x}"), &rep, tol::THM12_BOUNDED));
            s.reports.push(rep);
        }
        for x in [1, 7] {
            let rep = verify_theorem12(ctx.ws, f, Rational::integer(x), &cfg)?;
            let worst = rep.lhs.abs().max(rep.rhs.abs()).max(rep.residual);
            s.check(Check::at_most(4, format!("thm12 {f} x={x} exact zero"), worst, tol::EXACT_ZERO));
            s.reports.push(rep);
        }
    }
    Ok(s)
}

/// Random divisor-sum tables for the structural check.
fn random_table(rng: &mut ChaCha8Rng, len: usize) -> Result<FnTable<f64>> {
    let values = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    FnTable::from_values(FnId::Custom, values, false)
}

pub const COLLAPSE_XS: [(i64, i64); 3] = [(1, 10), (3, 10), (7, 10)];

/// Double-angle structure and the Davenport collapse for μ.
pub fn criterion5(ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let table = random_table(&mut rng, 2_000)?;
        let q = rng.gen_range(2..200i64);
        let x = r(rng.gen_range(-3 * q..3 * q), q);
        let t = TruncationSpec::direct(2_000);
        let a = sincos_series(&table, x, &t)?.value;
        let b = davenport_sine(&table, x, &t)?.value;
        worst = worst.max(relative_difference(a, b));
    }
    s.check(Check::at_most(5, "sincos vs davenport, 100 random tables", worst, tol::STRUCTURAL_REL));

    let mu = &ctx.ws.pair(FnId::Moebius)?.base;
    for (p, q) in COLLAPSE_XS {
        let x = r(p, q);
        let target = -(2.0 * std::f64::consts::PI * x.to_f64()).sin() / std::f64::consts::PI;
        let errs = ctx
            .scale
            .trend()
            .iter()
            .map(|&n| Ok((frac_series_lhs(mu, x, &TruncationSpec::cesaro(n))?.value - target).abs()))
            .collect::<Result<Vec<f64>>>()?;
        s.check(Check::at_most(5, format!("mu collapse x={x}"), errs[2], tol::DAVENPORT_COLLAPSE));
        s.check(Check::holds(5, format!("mu collapse x={x} non-increasing"), errs[1] <= errs[0] && errs[2] <= errs[1]));
    }
    let mut cfg = VerifyConfig::new(ctx.scale.cesaro_n_max());
    cfg.tolerance = Some(tol::DAVENPORT_COLLAPSE);
    for (f, x) in [(FnId::Moebius, r(3, 10)), (FnId::Liouville, r(1, 4)), (FnId::Moebius, r(1, 2))] {
        let rep = verify_theorem31(ctx.ws, f, x, &cfg)?;
        s.check(Check::at_most(5, format!("thm31 {f} x={x}"), rep.residual, tol::DAVENPORT_COLLAPSE));
        s.reports.push(rep);
    }
    Ok(s)
}

/// Orthogonality, the sawtooth integral, and the finite trigonometric sums.
pub fn criterion6(_ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let cfg = VerifyConfig::new(1);
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        for m in 1..=8 {
            worst = worst.max(verify_lemma31(n, m, &cfg)?.residual);
        }
    }
    s.check(Check::at_most(6, "orthogonality n,m <= 8", worst, tol::ORTHOGONALITY));
    let mut worst: f64 = 0.0;
    for big_n in 1..=6 {
        for m in 1..=24 {
            worst = worst.max(verify_eq34(big_n, m, &cfg)?.residual);
        }
    }
    s.check(Check::at_most(6, "frac-sincos integral N <= 6, m <= 24", worst, tol::FRAC_SINCOS));
    let (mut w_ram, mut w_sin): (f64, f64) = (0.0, 0.0);
    for big_n in 1..=100u64 {
        for n in 1..=300u64 {
            let divides = n % big_n == 0;
            let ram = ramanujan_cos_sum::<f64>(big_n, n)?;
            w_ram = w_ram.max((ram - if divides { big_n as f64 } else { 0.0 }).abs());
            let sin = sin2_sum::<f64>(big_n, n)?;
            w_sin = w_sin.max((sin - if divides { 0.0 } else { big_n as f64 / 2.0 }).abs());
        }
    }
    s.check(Check::at_most(6, "ramanujan sums N <= 100, n <= 300", w_ram, tol::RAMANUJAN));
    s.check(Check::at_most(6, "sin^2 sums N <= 100, m <= 300", w_sin, tol::RAMANUJAN));
    Ok(s)
}

/// Euler–Maclaurin with the sawtooth remainder.
pub fn criterion7(_ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let cfg = VerifyConfig::new(1);
    for phi in [Phi::Square, Phi::Sine, Phi::cubic()] {
        for (a, b) in [(0.0, 3.0), (0.5, 2.5), (0.0, 10.0)] {
            let rep = verify_lemma32(phi, a, b, &cfg)?;
            s.check(Check::at_most(7, format!("lemma32 {} [{a}, {b}]", phi.name()), rep.residual, tol::EULER_MACLAURIN));
            s.reports.push(rep);
        }
    }
    Ok(s)
}

pub const FINE_NS: [u64; 5] = [3, 5, 7, 9, 11];
pub const COS_POWER_NS: [u64; 3] = [3, 5, 7];

/// χ-weighted and cosine-power Fine sums.
pub fn criterion8(ctx: &Context) -> Result<Section> {
    let mut s = Section::default();
    let n_max = ctx.scale.n_max();
    let lambda = &ctx.ws.pair(FnId::Liouville)?.base;
    let direct = TruncationSpec::direct(n_max);
    let brute_t = TruncationSpec::direct(ctx.scale.cesaro_n_max());
    let d2 = FineSpec::d2(FnId::Liouville, 4, 2, ChiConvention::Corrected)?;
    let d1 = FineSpec::d1(FnId::Liouville, 2, 2, ChiConvention::Corrected)?;
    for (spec, ns) in [(d2, &FINE_NS[..]), (d1, &FINE_NS[..])] {
        let scan = fine_scan(&spec, lambda, ns, &direct, FineMethod::Collapsed, tol::FINE_CHI)?;
        for rep in &scan.reports {
            let pinned = ctx.scale.threshold(tol::FINE_CHI, rep.bound);
            s.check(Check::at_most(8, format!("{spec} N={}", rep.n), rep.sum_value.abs(), pinned));
            let brute = fine_sum(&spec, lambda, rep.n, &brute_t, FineMethod::Brute)?;
            s.check(Check::at_most(
                8,
                format!("{spec} N={} brute vs collapsed", rep.n),
                (brute.sum_value - rep.sum_value).abs(),
                brute.bound + rep.bound,
            ));
            s.fine.push(brute);
        }
        s.fine.extend(scan.reports);
        // non-coprime controls: reported, not judged
        let controls: &[u64] = if spec == d2 { &[2, 4, 8] } else { &[2, 4, 6] };
        s.fine.extend(fine_scan(&spec, lambda, controls, &direct, FineMethod::Collapsed, tol::FINE_CHI)?.reports);
    }
    for f in [FnId::Moebius, FnId::Liouville] {
        let table = &ctx.ws.pair(f)?.base;
        for m in 1..=3 {
            let spec = FineSpec::cos_power(f, m)?;
            for big_n in COS_POWER_NS {
                let reps = ctx
                    .scale
                    .trend()
                    .iter()
                    .map(|&n| fine_sum(&spec, table, big_n, &TruncationSpec::cesaro(n), FineMethod::Collapsed))
                    .collect::<Result<Vec<_>>>()?;
                let mags: Vec<f64> = reps.iter().map(|r| r.sum_value.abs()).collect();
                s.check(Check::at_most(8, format!("{spec} N={big_n}"), mags[2], tol::FINE_COS_POWER));
                s.check(Check::holds(8, format!("{spec} N={big_n} decreasing in n_max"), mags[1] <= mags[0] && mags[2] <= mags[1]));
                s.fine.extend(reps.into_iter().last());
            }
        }
    }
    Ok(s)
}

pub const PROBE_XS: [i64; 3] = [100, 1_000, 10_000];

/// Audit tables; the criterion checks only that they are populated and finite.
pub fn audits(ctx: &Context) -> Result<Audits> {
    let n_max = ctx.scale.n_max();
    let direct = TruncationSpec::direct(n_max);
    let mu = &ctx.ws.pair(FnId::Moebius)?.base;
    let lambda = &ctx.ws.pair(FnId::Liouville)?.base;

    let d1_mu = FineSpec::d1(FnId::Moebius, 5, 2, ChiConvention::Corrected)?.with_audit(true);
    let ns: Vec<u64> = (1..=12).collect();
    let d1_moebius = fine_scan(&d1_mu, mu, &ns, &direct, FineMethod::Collapsed, tol::FINE_CHI)?.reports;

    let mut chi_conventions = Vec::new();
    for (spec, big_ns) in [
        (FineSpec::d2(FnId::Liouville, 4, 2, ChiConvention::Corrected)?, [3u64, 5, 7]),
        (FineSpec::d1(FnId::Liouville, 2, 2, ChiConvention::Corrected)?, [3, 5, 7]),
    ] {
        let mut literal = spec;
        literal.chi = literal.chi.map(|mut c| {
            c.convention = ChiConvention::Literal;
            c
        });
        for big_n in big_ns {
            chi_conventions.push(ChiAuditRow {
                spec: spec.to_string(),
                n: big_n,
                corrected: fine_sum(&spec, lambda, big_n, &direct, FineMethod::Collapsed)?.sum_value,
                literal: fine_sum(&literal, lambda, big_n, &direct, FineMethod::Collapsed)?.sum_value,
            });
        }
    }

    let mut frequencies = Vec::new();
    let ces = TruncationSpec::cesaro(ctx.scale.trend()[1]);
    for spec in [FineSpec::cos_power(FnId::Liouville, 1)?, FineSpec::cos_power(FnId::Liouville, 3)?] {
        for big_n in [3u64, 5] {
            let lit = spec.with_frequency(Frequency::PiLiteral);
            frequencies.push(FrequencyAuditRow {
                spec: spec.to_string(),
                n: big_n,
                two_pi: fine_sum(&spec, lambda, big_n, &ces, FineMethod::Brute)?.sum_value,
                pi_literal: fine_sum(&lit, lambda, big_n, &ces, FineMethod::Brute)?.sum_value,
            });
        }
    }

    let xs: Vec<Rational> = PROBE_XS.iter().map(|&x| Rational::integer(x)).collect();
    let corollary_probe = asymptotic_probe(ctx.ws, AsymptoticModel::von_mangoldt(), &xs, n_max)?;

    let mut cfg = ctx.cfg();
    cfg.sign = SignConvention::Literal;
    let literal_sign = [FnId::VonMangoldt, FnId::Moebius, FnId::Liouville]
        .iter()
        .map(|&f| verify_theorem11(ctx.ws, f, r(5, 2), &cfg))
        .collect::<Result<Vec<_>>>()?;

    Ok(Audits { d1_moebius, chi_conventions, frequencies, corollary_probe, literal_sign })
}

pub fn criterion9(audits: &Audits) -> Section {
    let mut s = Section::default();
    let finite = |v: f64| v.is_finite();
    s.check(Check::holds(9, "d1(moebius,5,2) scan reported", !audits.d1_moebius.is_empty() && audits.d1_moebius.iter().all(|r| finite(r.sum_value))));
    s.check(Check::holds(9, "chi literal vs corrected reported", !audits.chi_conventions.is_empty() && audits.chi_conventions.iter().all(|r| finite(r.literal) && finite(r.corrected))));
    s.check(Check::holds(9, "pi_literal vs two_pi reported", !audits.frequencies.is_empty() && audits.frequencies.iter().all(|r| finite(r.two_pi) && finite(r.pi_literal))));
    s.check(Check::holds(9, "corollary probe reported", audits.corollary_probe.len() == PROBE_XS.len() && audits.corollary_probe.iter().all(|r| finite(r.d) && finite(r.log_comparison))));
    s
}

/// Runs criteria 1–9 in parallel; the output order is fixed.
pub fn run(ctx: &Context) -> Result<SelfTest> {
    ctx.warm()?;
    type Crit = fn(&Context) -> Result<Section>;
    let crits: [Crit; 8] = [criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8];
    let (sections, audits) = rayon::join(
        || crits.par_iter().map(|c| c(ctx)).collect::<Result<Vec<_>>>(),
        || audits(ctx),
    );
    let mut sections = sections?;
    let audits = audits?;
    sections.push(criterion9(&audits));
    Ok(SelfTest { scale: ctx.scale, sections, audits })
}
