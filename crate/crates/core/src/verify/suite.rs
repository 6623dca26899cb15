//! The full verification run, driven by a small TOML config.

use serde::{Deserialize, Serialize};

use super::par_map;

use super::cases::{verify_appendix, verify_case, BettiMode, Verdict};
use super::random::{
    agreement_suite, edge_identity_suite, join_identity_suite, oracle_suite, theorem_suite,
    PropertyResult,
};
use super::shape::CorollaryFamily;
use crate::complex::collapse_oracle;
use crate::error::{Error, Result};
use crate::family::{grid_label, FamilySpec, FamilyTag};
use crate::graph::{same_graph, Comparison};
use crate::morse_ops::{
    builtin_certificate, builtin_ids, make_replacement, replay, CheckLevel, MarkedPatch,
    ReplacementKind,
};

pub const DEFAULT_SEED: u64 = 0x5eed_1d3a;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub c1_max: usize,
    pub c2_max: usize,
    /// C3 cases up to here get Betti numbers; the rest up to `c3_chi_max` only χ̃.
    pub c3_betti_max: usize,
    pub c3_chi_max: usize,
    pub m2_max: usize,
    pub m3_betti_max: usize,
    pub m3_chi_max: usize,
    pub ch1_max: usize,
    pub primes: Vec<u64>,
    pub budget: usize,
    pub betti: BettiMode,
    pub seed: u64,
    pub appendix_max: usize,
    pub ch1_cert_max: usize,
    pub p4n_cert_max: usize,
    pub yrec_cert_max: usize,
    pub random_hosts: usize,
    pub host_extra_max: usize,
    pub oracle_instances: usize,
    pub identity_instances: usize,
    pub agreement_instances: usize,
    pub agreement_max_vertices: usize,
    /// Seam replacements are checked for `3 <= n <= recursion_max`.
    pub recursion_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            c1_max: 16,
            c2_max: 16,
            c3_betti_max: 9,
            c3_chi_max: 12,
            m2_max: 16,
            m3_betti_max: 9,
            m3_chi_max: 12,
            ch1_max: 10,
            primes: vec![2, 3],
            budget: crate::complex::DEFAULT_FACE_BUDGET,
            betti: BettiMode::Auto,
            seed: DEFAULT_SEED,
            appendix_max: 14,
            ch1_cert_max: 5,
            p4n_cert_max: 10,
            yrec_cert_max: 10,
            random_hosts: 20,
            host_extra_max: 10,
            oracle_instances: 200,
            identity_instances: 100,
            agreement_instances: 200,
            agreement_max_vertices: 12,
            recursion_max: 8,
        }
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    /// A fast configuration for smoke tests.
    pub fn quick() -> Self {
        SuiteConfig {
            c1_max: 8,
            c2_max: 8,
            c3_betti_max: 4,
            c3_chi_max: 6,
            m2_max: 8,
            m3_betti_max: 4,
            m3_chi_max: 6,
            ch1_max: 5,
            appendix_max: 6,
            ch1_cert_max: 2,
            p4n_cert_max: 4,
            yrec_cert_max: 5,
            random_hosts: 3,
            host_extra_max: 4,
            oracle_instances: 12,
            identity_instances: 10,
            agreement_instances: 10,
            agreement_max_vertices: 9,
            recursion_max: 4,
            ..SuiteConfig::default()
        }
    }

    /// Corollary cases, with whether each one computes Betti numbers.
    pub fn corollary_cases(&self) -> Vec<(CorollaryFamily, usize, bool)> {
        use CorollaryFamily::*;
        let mut out = Vec::new();
        let mut range = |f: CorollaryFamily, from: usize, betti_to: usize, chi_to: usize| {
            for n in from..=chi_to.max(betti_to) {
                out.push((f, n, n <= betti_to));
            }
        };
        range(C1, 1, self.c1_max, self.c1_max);
        range(C2, 1, self.c2_max, self.c2_max);
        range(C3, 1, self.c3_betti_max, self.c3_chi_max);
        range(M2, 1, self.m2_max, self.m2_max);
        // M3 needs three columns to be a simple graph.
        range(M3, 3, self.m3_betti_max, self.m3_chi_max);
        range(CH1, 1, self.ch1_max, self.ch1_max);
        out
    }

    pub fn certificate_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = builtin_ids()
            .into_iter()
            .filter(|id| !id.contains('('))
            .collect();
        ids.extend((1..=self.ch1_cert_max).map(|n| format!("ch1({n})")));
        ids.extend((3..=self.p4n_cert_max).map(|n| format!("p4n-to-x({n})")));
        ids.extend((4..=self.yrec_cert_max).map(|n| format!("y-recursion({n})")));
        ids
    }
}

/// Certificates small enough to run the collapse oracle on every step.
pub const ORACLE_CERTIFICATES: [&str; 7] = [
    "thm1-generic",
    "thm2-generic",
    "p42",
    "c32",
    "m32",
    "c33",
    "m33",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteLine {
    pub section: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for SuiteLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}",
            self.name,
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub lines: Vec<SuiteLine>,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &SuiteLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let mut sections: std::collections::BTreeMap<&str, (usize, usize)> = Default::default();
        for l in &self.lines {
            let e = sections.entry(&l.section).or_default();
            e.0 += 1;
            e.1 += l.pass as usize;
        }
        serde_json::json!({
            "passed": self.passed,
            "sections": sections
                .iter()
                .map(|(s, (total, ok))| serde_json::json!({"section": s, "total": total, "passed": ok}))
                .collect::<Vec<_>>(),
            "failures": self.failures().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

fn line(
    section: &str,
    name: impl Into<String>,
    pass: bool,
    detail: impl Into<String>,
) -> SuiteLine {
    SuiteLine {
        section: section.to_string(),
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn errored(section: &str, name: impl Into<String>, e: Error) -> SuiteLine {
    line(section, name, false, format!("error: {e}"))
}

pub fn corollary_lines(config: &SuiteConfig) -> Vec<SuiteLine> {
    par_map(config.corollary_cases(), |(f, n, betti)| {
        let mode = if betti { config.betti } else { BettiMode::Off };
        let name = format!("{f} {n}");
        match verify_case(f, n, &config.primes, mode, config.budget) {
            Ok(r) => line("corollary", name, r.verdict == Verdict::Pass, r.summary()),
            Err(e) => errored("corollary", name, e),
        }
    })
}

pub fn appendix_lines(config: &SuiteConfig) -> Vec<SuiteLine> {
    match verify_appendix(config.appendix_max) {
        Ok(checks) => checks
            .into_iter()
            .map(|c| line("appendix", format!("{} {}", c.name, c.n), c.pass, c.detail))
            .collect(),
        Err(e) => vec![errored("appendix", "appendix", e)],
    }
}

pub fn certificate_lines(config: &SuiteConfig) -> Vec<SuiteLine> {
    par_map(config.certificate_ids(), |id| {
        let check = if ORACLE_CERTIFICATES.contains(&id.as_str()) {
            CheckLevel::Betti
        } else {
            CheckLevel::Chi
        };
        match builtin_certificate(&id).and_then(|c| replay(&c, check)) {
            Ok(r) => line(
                "certificate",
                format!("replay {id}"),
                r.passed(),
                r.summary(),
            ),
            Err(e) => errored("certificate", format!("replay {id}"), e),
        }
    })
}

/// Runs the collapse oracle on every step of the small built-in certificates.
pub fn oracle_lines(config: &SuiteConfig) -> Vec<SuiteLine> {
    par_map(ORACLE_CERTIFICATES.to_vec(), |id| {
        let run = || -> Result<(bool, String)> {
            let cert = builtin_certificate(id)?;
            let mut g = cert.initial.resolve()?;
            let mut pairs = 0;
            for (i, step) in cert.steps.iter().enumerate() {
                let r = collapse_oracle(&g, step, config.budget)?;
                if !r.residual_matches {
                    return Ok((false, format!("step {} {step}: residual differs", i + 1)));
                }
                pairs += r.pairs;
                g = step.apply(&g).map_err(|e| Error::Oracle(e.to_string()))?;
            }
            Ok((
                true,
                format!("steps={} collapses={pairs}", cert.steps.len()),
            ))
        };
        match run() {
            Ok((pass, detail)) => line("collapse", format!("collapse {id}"), pass, detail),
            Err(e) => errored("collapse", format!("collapse {id}"), e),
        }
    })
}

/// Relaxed replacement on the twisted ladder `MH1(n)` at its seam gives the
/// final graph of the `ch1(n)` certificate, for `n >= 2`.
pub fn relaxed_ladder_lines(max: usize) -> Vec<SuiteLine> {
    (2..=max)
        .map(|n| {
            let run = || -> Result<(bool, String)> {
                let g = FamilySpec::single(FamilyTag::MH1, n)?.generate()?;
                let patch = MarkedPatch::new(
                    ReplacementKind::Thm2,
                    [
                        grid_label(1, 1),
                        grid_label(2, 1),
                        grid_label(2, 2 * n),
                        grid_label(1, 2 * n),
                    ],
                )
                .relaxed();
                let r = make_replacement(&g, &patch)?;
                let report = replay(&r.certificate, CheckLevel::Chi)?;
                let target = builtin_certificate(&format!("ch1({n})"))?
                    .expected_final
                    .resolve()?;
                let iso = same_graph(&r.h, &target, Comparison::Isomorphic)?.equal;
                Ok((
                    report.passed() && iso,
                    format!("{}; isomorphic to ch1({n}) final={iso}", report.summary()),
                ))
            };
            let name = format!("mh1-relaxed {n}");
            match run() {
                Ok((pass, detail)) => line("relaxed", name, pass, detail),
                Err(e) => errored("relaxed", name, e),
            }
        })
        .collect()
}

/// The seam patch of the family member at `n` that grows it along `family.recursion()`.
pub fn seam_patch(source: CorollaryFamily, n: usize) -> Result<MarkedPatch> {
    let l = grid_label;
    let twisted = matches!(source, CorollaryFamily::M2 | CorollaryFamily::M3);
    let patch = match source {
        CorollaryFamily::C1 => MarkedPatch::new(ReplacementKind::Thm1, [l(1, n), l(1, 1)]),
        CorollaryFamily::C2 | CorollaryFamily::M2 => {
            let (b, bbar) = if twisted {
                (l(2, 1), l(1, 1))
            } else {
                (l(1, 1), l(2, 1))
            };
            MarkedPatch::new(ReplacementKind::Thm2, [l(1, n), l(2, n), b, bbar])
        }
        CorollaryFamily::C3 | CorollaryFamily::M3 => {
            let right: Vec<String> = if twisted {
                (1..=3).rev().map(|r| l(r, 1)).collect()
            } else {
                (1..=3).map(|r| l(r, 1)).collect()
            };
            let mut v: Vec<String> = (1..=3).map(|r| l(r, n)).collect();
            v.extend(right);
            MarkedPatch::new(ReplacementKind::Thm3, v)
        }
        CorollaryFamily::CH1 => {
            return Err(Error::InvalidFamily("CH1 has no seam recursion".into()))
        }
    };
    Ok(patch)
}

/// Replacement at the seam of the source family yields the next family
/// member: `C1(n+3)`, `C2(n+2)`/`M2(n+2)` and `C3(n+4)`/`M3(n+4)`.
pub fn recursion_lines(config: &SuiteConfig) -> Vec<SuiteLine> {
    use CorollaryFamily::*;
    let mut cases = Vec::new();
    for target in [C1, C2, M2, C3, M3] {
        let (shift, _, source) = target.recursion().expect("grid families recurse");
        for n in 3..=config.recursion_max {
            cases.push((target, source, shift, n));
        }
    }
    par_map(cases, |(target, source, shift, n)| {
        let run = || -> Result<(bool, String)> {
            let g = source.spec(n)?.generate()?;
            let r = make_replacement(&g, &seam_patch(source, n)?)?;
            let want = target.spec(n + shift)?.generate()?;
            let iso = same_graph(&r.h, &want, Comparison::Isomorphic)?.equal;
            let report = replay(&r.certificate, CheckLevel::Chi)?;
            Ok((
                iso && report.passed(),
                format!(
                    "-> {target} {}: isomorphic={iso}; {}",
                    n + shift,
                    report.summary()
                ),
            ))
        };
        let name = format!("seam {source} {n}");
        match run() {
            Ok((pass, detail)) => line("recursion", name, pass, detail),
            Err(e) => errored("recursion", name, e),
        }
    })
}

pub fn property_results(config: &SuiteConfig) -> Vec<PropertyResult> {
    let (b, s) = (config.budget, config.seed);
    let mut out: Vec<PropertyResult> = [
        ReplacementKind::Thm1,
        ReplacementKind::Thm2,
        ReplacementKind::Thm3,
    ]
    .iter()
    .map(|&k| theorem_suite(k, config.random_hosts, s, config.host_extra_max, b))
    .collect();
    out.push(oracle_suite(config.oracle_instances, s, b));
    out.push(join_identity_suite(config.identity_instances, s, b));
    out.push(edge_identity_suite(config.identity_instances, s, b));
    out.push(agreement_suite(
        config.agreement_instances,
        s,
        config.agreement_max_vertices,
        b,
    ));
    out
}

pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let mut lines = corollary_lines(config);
    lines.extend(appendix_lines(config));
    lines.extend(certificate_lines(config));
    lines.extend(oracle_lines(config));
    lines.extend(relaxed_ladder_lines(config.ch1_cert_max.max(2)));
    lines.extend(recursion_lines(config));
    let properties = property_results(config);
    lines.extend(
        properties
            .iter()
            .map(|p| line("property", p.name.clone(), p.passed(), p.summary())),
    );
    let passed = lines.iter().all(|l| l.pass);
    SuiteReport {
        lines,
        properties,
        passed,
    }
}
