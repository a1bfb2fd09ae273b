use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{eval_phi, FineSpec, Frequency, Weights};
use crate::arith::FnTable;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::series::{check_truncation, finish, Rational, TailKind};
use crate::summation::{Compensated, SeriesSum, SummationMethod, TruncationSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FineMethod {
    /// `Σ_{k=1}^N φ(k/N)` from `N` series evaluations.
    Brute,
    /// One series after summing the harmonics over `k` in closed form.
    Collapsed,
}

impl FineMethod {
    pub fn name(&self) -> &'static str {
        match self {
            FineMethod::Brute => "brute",
            FineMethod::Collapsed => "collapsed",
        }
    }
}

/// `Σ_{k=1}^N φ(k/N)` for one `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FineReport<T> {
    pub spec: FineSpec,
    pub n: u64,
    /// `gcd(N, m) = 1`; always true for families without a modulus.
    pub coprime_ok: bool,
    pub sum_value: T,
    pub bound: T,
    pub bound_is_heuristic: bool,
    pub method: FineMethod,
    pub n_max: u64,
    pub summation: SummationMethod,
}

impl<T: Real> FineReport<T> {
    pub fn passes(&self, tol: f64) -> bool {
        self.sum_value.as_f64().abs() <= tol
    }

    pub const CSV_HEADER: [&'static str; 15] = [
        "family",
        "fn",
        "m",
        "l",
        "chi_convention",
        "frequency",
        "audit",
        "N",
        "coprime_ok",
        "value",
        "bound",
        "bound_is_heuristic",
        "method",
        "n_max",
        "summation",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        let s = &self.spec;
        vec![
            s.family_name().to_string(),
            s.base_fn.to_string(),
            s.m().to_string(),
            s.l().map_or(String::new(), |l| l.to_string()),
            s.chi.map_or(String::new(), |c| format!("{:?}", c.convention).to_lowercase()),
            s.frequency.name().to_string(),
            s.audit.to_string(),
            self.n.to_string(),
            self.coprime_ok.to_string(),
            format!("{:e}", self.sum_value.as_f64()),
            format!("{:e}", self.bound.as_f64()),
            self.bound_is_heuristic.to_string(),
            self.method.name().to_string(),
            self.n_max.to_string(),
            format!("{:?}", self.summation).to_lowercase(),
        ]
    }
}

fn brute<T: Real>(spec: &FineSpec, table: &FnTable<T>, big_n: u64, t: &TruncationSpec) -> Result<(T, T, bool, SummationMethod)> {
    let mut value = Compensated::new();
    let mut bound = Compensated::new();
    let mut heuristic = false;
    let mut used = t.method;
    for k in 1..=big_n {
        let x = Rational::new(k as i64, big_n as i64)?;
        let v = eval_phi(spec, table, x, t)?;
        value.add(v.value);
        bound.add(v.tail_bound);
        heuristic |= v.is_heuristic();
        used = v.method;
    }
    Ok((value.value(), bound.value(), heuristic, used))
}

fn collapsed<T: Real>(spec: &FineSpec, table: &FnTable<T>, big_n: u64, t: &TruncationSpec) -> Result<(T, T, bool, SummationMethod)> {
    if spec.frequency != Frequency::TwoPi {
        return Err(Error::Spec(format!("collapsed sums need the two_pi frequency, {spec} uses pi_literal")));
    }
    spec.validate(table)?;
    check_truncation(table, t)?;
    let nf = T::of_u64(big_n);
    let weights = Weights::new(spec)?;
    match spec.reduction::<T>()? {
        None => {
            // Σ_k cos(2πkn/N) = N·[N | n]
            let mut acc = Compensated::new();
            for n in (big_n..=t.n_max).step_by(big_n as usize) {
                acc.add(table.value(n) * weights.at(n));
            }
            let s = spec.weight_exponent::<T>();
            let tail = table.majorant().tail_sum_multiples(s, big_n, t.n_max);
            let scale = spec.tail_scale::<T>()?;
            Ok(match tail {
                Some(tail) => (nf * acc.value(), nf * scale * tail, false, SummationMethod::Direct),
                None => (nf * acc.value(), T::infinity(), true, SummationMethod::Direct),
            })
        }
        Some(red) => {
            // Σ_k cos^m(2πkn/N) = N·(c₀ + Σ_{N | jn} c_j), a function of n mod N
            let per_residue: Vec<T> = (0..big_n)
                .map(|r| {
                    let hit = red.harmonics.iter().filter(|&&(j, _)| (j as u64 * r).is_multiple_of(big_n));
                    nf * hit.fold(red.constant, |a, &(_, c)| a + c)
                })
                .collect();
            let mut acc = SeriesSum::new(t.cesaro_block);
            for n in 1..=t.n_max {
                let w = per_residue[(n % big_n) as usize];
                acc.push(table.value(n) * weights.at(n) * w);
            }
            let abs_sum = red.harmonics.iter().fold(red.constant.abs(), |a, h| a + h.1.abs());
            let v = finish(&acc, t, table.majorant(), T::one(), nf * abs_sum);
            Ok((v.value, v.tail_bound, v.tail_kind == TailKind::Heuristic, v.method))
        }
    }
}

pub fn fine_sum<T: Real>(
    spec: &FineSpec,
    table: &FnTable<T>,
    big_n: u64,
    t: &TruncationSpec,
    method: FineMethod,
) -> Result<FineReport<T>> {
    if big_n == 0 {
        return Err(domain("fine_sum needs N ≥ 1"));
    }
    if big_n > i64::MAX as u64 {
        return Err(domain(format!("N = {big_n} is too large")));
    }
    let (sum_value, bound, bound_is_heuristic, summation) = match method {
        FineMethod::Brute => brute(spec, table, big_n, t)?,
        FineMethod::Collapsed => collapsed(spec, table, big_n, t)?,
    };
    Ok(FineReport {
        spec: *spec,
        n: big_n,
        coprime_ok: spec.modulus().is_none_or(|m| big_n.gcd(&m) == 1),
        sum_value,
        bound,
        bound_is_heuristic,
        method,
        n_max: t.n_max,
        summation,
    })
}

/// Witness for `φ(x) ≠ −φ(−x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddnessReport<T> {
    pub spec: FineSpec,
    pub samples: usize,
    /// `max |φ(x) + φ(−x)|` over the samples.
    pub max_abs_sum: T,
    pub argmax: Rational,
    /// Truncation bound on `φ(x) + φ(−x)` at the maximizing sample.
    pub bound: T,
    pub bound_is_heuristic: bool,
    /// `max_abs_sum > 10·bound`; otherwise the probe is inconclusive.
    pub certified: bool,
}

pub fn oddness_probe<T: Real>(
    spec: &FineSpec,
    table: &FnTable<T>,
    xs: &[Rational],
    t: &TruncationSpec,
) -> Result<OddnessReport<T>> {
    let (&first, rest) = xs.split_first().ok_or_else(|| domain("oddness probe needs at least one sample"))?;
    let eval = |x: Rational| -> Result<(T, T, bool)> {
        let a = eval_phi(spec, table, x, t)?;
        let b = eval_phi(spec, table, -x, t)?;
        Ok(((a.value + b.value).abs(), a.tail_bound + b.tail_bound, a.is_heuristic() || b.is_heuristic()))
    };
    let mut best = (first, eval(first)?);
    for &x in rest {
        let e = eval(x)?;
        if e.0 > best.1 .0 {
            best = (x, e);
        }
    }
    let (argmax, (max_abs_sum, bound, heuristic)) = best;
    Ok(OddnessReport {
        spec: *spec,
        samples: xs.len(),
        max_abs_sum,
        argmax,
        bound,
        bound_is_heuristic: heuristic,
        certified: max_abs_sum > T::of(10.0) * bound && max_abs_sum > T::zero(),
    })
}

/// Pass counts against a tolerance, split by coprimality with the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScanSummary {
    pub coprime_total: usize,
    pub coprime_pass: usize,
    pub non_coprime_total: usize,
    pub non_coprime_pass: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FineScan<T> {
    pub tolerance: f64,
    pub reports: Vec<FineReport<T>>,
    pub summary: ScanSummary,
}

impl<T: Real> FineScan<T> {
    /// Every coprime `N` meets the tolerance.
    pub fn coprime_all_pass(&self) -> bool {
        self.summary.coprime_pass == self.summary.coprime_total
    }
}

/// [`fine_sum`] over each `N`, reports in input order.
pub fn fine_scan<T: Real>(
    spec: &FineSpec,
    table: &FnTable<T>,
    ns: &[u64],
    t: &TruncationSpec,
    method: FineMethod,
    tolerance: f64,
) -> Result<FineScan<T>> {
    let reports = ns.par_iter().map(|&n| fine_sum(spec, table, n, t, method)).collect::<Result<Vec<_>>>()?;
    let mut summary = ScanSummary::default();
    for r in &reports {
        let pass = r.passes(tolerance) as usize;
        if r.coprime_ok {
            summary.coprime_total += 1;
            summary.coprime_pass += pass;
        } else {
            summary.non_coprime_total += 1;
            summary.non_coprime_pass += pass;
        }
    }
    Ok(FineScan { tolerance, reports, summary })
}
