//! Per-family verification against the predicted shapes, and the P(4,n), X4 and Y4 identities.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::shape::{expected_shape, CorollaryFamily, WedgeShape};
use crate::error::{Error, Result};
use crate::euler::{check_edge_recursion, chi_prop_a, chi_recursive};
use crate::family::{grid_label, FamilySpec, FamilyTag};
use crate::graph::Graph;
use crate::homology::{graph_betti, BettiMethod};
use crate::morse_ops::{builtin_certificate, replay, CheckLevel};

/// How much homology a case computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BettiMode {
    /// Skip Betti numbers.
    Off,
    /// Explicit complex only; cases over the face budget fall back to χ̃ alone.
    Explicit,
    /// Explicit when it fits, Morse matching otherwise.
    #[default]
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub p: u64,
    /// Nonzero entries as `d:value`, or `None` when skipped.
    pub profile: Option<String>,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: CorollaryFamily,
    pub n: usize,
    pub expected: WedgeShape,
    pub chi: i128,
    pub betti: Vec<BettiEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub verdict: Verdict,
}

impl VerifyReport {
    /// `chi=<v> betti=<...> expected=<shape>`.
    pub fn summary(&self) -> String {
        let betti: Vec<String> = self
            .betti
            .iter()
            .map(|b| match &b.profile {
                Some(p) => format!("p{}[{}]", b.p, p),
                None => format!("p{}[skipped]", b.p),
            })
            .collect();
        let betti = if betti.is_empty() {
            "skipped".to_string()
        } else {
            betti.join(",")
        };
        let mut out = format!(
            "chi={} betti={} expected={}",
            self.chi, betti, self.expected
        );
        if let Some(note) = &self.note {
            out.push_str(&format!(" ({note})"));
        }
        out
    }
}

/// `FAMILY n VERDICT chi=<v> betti=<...> expected=<shape>`.
impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.family,
            self.n,
            self.verdict,
            self.summary()
        )
    }
}

/// Computes χ̃ and Betti numbers of `I(family(n))` and compares with the predicted shape.
pub fn verify_case(
    family: CorollaryFamily,
    n: usize,
    primes: &[u64],
    mode: BettiMode,
    budget: usize,
) -> Result<VerifyReport> {
    let expected = expected_shape(family, n)?;
    let g = family.spec(n)?.generate()?;
    let chi = chi_recursive(&g)?;
    let mut ok = chi == expected.chi();
    let mut note = None;
    let mut betti = Vec::new();
    if mode != BettiMode::Off {
        for &p in primes {
            let method = if mode == BettiMode::Explicit {
                BettiMethod::Explicit
            } else {
                BettiMethod::Auto
            };
            match graph_betti(&g, p, budget, method) {
                Ok(profile) => {
                    let matches = profile == expected.betti(p)?;
                    ok &= matches;
                    betti.push(BettiEntry {
                        p,
                        profile: Some(profile.to_string()),
                        matches: Some(matches),
                    });
                }
                Err(Error::FaceBudget { budget }) => {
                    note = Some(format!("Betti skipped: more than {budget} faces"));
                    betti.push(BettiEntry {
                        p,
                        profile: None,
                        matches: None,
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(VerifyReport {
        family,
        n,
        expected,
        chi,
        betti,
        note,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
    })
}

/// One checked P(4,n), X4 or Y4 identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixCheck {
    pub name: String,
    pub n: usize,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for AppendixCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.name,
            self.n,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

fn p4(n: usize) -> Result<Graph> {
    FamilySpec::new(FamilyTag::P, 4, n)?.generate()
}

fn x4(n: usize) -> Result<Graph> {
    FamilySpec::single(FamilyTag::X4, n)?.generate()
}

fn y4(n: usize) -> Result<Graph> {
    FamilySpec::single(FamilyTag::Y4, n)?.generate()
}

fn check(name: &str, n: usize, pass: bool, detail: String) -> AppendixCheck {
    AppendixCheck {
        name: name.to_string(),
        n,
        pass,
        detail,
    }
}

/// The closed form, the sign pattern and the recursions for `P_{4,n}`,
/// `X_n` and `Y_n`, for every `n ≤ n_max`.
pub fn verify_appendix(n_max: usize) -> Result<Vec<AppendixCheck>> {
    if n_max < 4 {
        return Err(Error::InvalidFamily(format!(
            "appendix checks need n_max >= 4, got {n_max}"
        )));
    }
    let mut out = Vec::new();
    let chi_p: Vec<i128> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                Ok(0)
            } else {
                chi_recursive(&p4(n)?)
            }
        })
        .collect::<Result<_>>()?;
    let chi_x: Vec<i128> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                Ok(0)
            } else {
                chi_recursive(&x4(n)?)
            }
        })
        .collect::<Result<_>>()?;
    let chi_y: Vec<i128> = (0..=n_max)
        .map(|n| {
            if n == 0 {
                Ok(0)
            } else {
                chi_recursive(&y4(n)?)
            }
        })
        .collect::<Result<_>>()?;

    for (n, want) in [(1, 1), (2, 0), (3, 1)] {
        out.push(check(
            "y-base",
            n,
            chi_y[n] == want,
            format!("chi(Y{n})={} want {want}", chi_y[n]),
        ));
    }
    for n in 1..=n_max {
        let closed = chi_prop_a(n);
        out.push(check(
            "closed-form",
            n,
            closed == chi_p[n],
            format!("chi(P4,{n})={} formula={closed}", chi_p[n]),
        ));
        let parity_ok = if n % 2 == 1 {
            chi_p[n] >= 0
        } else {
            chi_p[n] < 0
        };
        out.push(check(
            "parity",
            n,
            parity_ok,
            format!("chi(P4,{n})={}", chi_p[n]),
        ));
        if n >= 3 {
            let report = replay(
                &builtin_certificate(&format!("p4n-to-x({n})"))?,
                CheckLevel::Chi,
            )?;
            let pass = report.passed() && chi_p[n] == chi_x[n - 2];
            out.push(check(
                "p4n-to-x",
                n,
                pass,
                format!("{}; chi(X{})={}", report.summary(), n - 2, chi_x[n - 2]),
            ));
        }
        if n >= 4 {
            // The edge identity on X_{n-2} with e = r1c1–r4c1 gives the cofiber relation.
            let id = check_edge_recursion(&x4(n - 2)?, &grid_label(1, 1), &grid_label(4, 1))?;
            let pass = id.holds() && id.without_edge == chi_p[n - 2] && id.link == chi_y[n - 3];
            out.push(check(
                "x-cofiber",
                n,
                pass,
                format!(
                    "chi(P4,{})={} chi(X{})={} chi(Y{})={}",
                    n - 2,
                    chi_p[n - 2],
                    n - 2,
                    chi_x[n - 2],
                    n - 3,
                    chi_y[n - 3]
                ),
            ));
            let pass = chi_p[n] == chi_p[n - 2] - chi_y[n - 3];
            out.push(check(
                "p-recursion",
                n,
                pass,
                format!("{} = {} - {}", chi_p[n], chi_p[n - 2], chi_y[n - 3]),
            ));
            let report = replay(
                &builtin_certificate(&format!("y-recursion({n})"))?,
                CheckLevel::Chi,
            )?;
            let pass = report.passed() && chi_y[n] == -chi_y[n - 3];
            out.push(check(
                "y-recursion",
                n,
                pass,
                format!(
                    "{}; chi(Y{n})={} chi(Y{})={}",
                    report.summary(),
                    chi_y[n],
                    n - 3,
                    chi_y[n - 3]
                ),
            ));
        }
    }
    Ok(out)
}
