//! Wedges of spheres and the shapes the corollaries predict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{FamilySpec, FamilyTag};
use crate::homology::BettiProfile;

/// `⋁_m ⋄^d`, or a contractible complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WedgeShape {
    Wedge { m: u64, d: isize },
    Point,
}

impl WedgeShape {
    pub fn wedge(m: u64, d: isize) -> Result<Self> {
        let s = WedgeShape::Wedge { m, d };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WedgeShape::Point => Ok(()),
            WedgeShape::Wedge { m, d } => {
                if m == 0 {
                    Err(Error::InvalidShape(
                        "a wedge needs at least one sphere".into(),
                    ))
                } else if d < -1 {
                    Err(Error::InvalidShape(format!(
                        "sphere dimension {d} is below -1"
                    )))
                } else if d == -1 && m != 1 {
                    Err(Error::InvalidShape(
                        "only one copy of the (-1)-sphere makes sense".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn chi(&self) -> i128 {
        match *self {
            WedgeShape::Point => 0,
            WedgeShape::Wedge { m, d } => {
                if d.rem_euclid(2) == 0 {
                    m as i128
                } else {
                    -(m as i128)
                }
            }
        }
    }

    pub fn suspend(&self, k: usize) -> WedgeShape {
        match *self {
            WedgeShape::Point => WedgeShape::Point,
            WedgeShape::Wedge { m, d } => WedgeShape::Wedge {
                m,
                d: d + k as isize,
            },
        }
    }

    pub fn betti(&self, p: u64) -> Result<BettiProfile> {
        self.validate()?;
        Ok(match *self {
            WedgeShape::Point => BettiProfile::zero(p),
            WedgeShape::Wedge { m, d } => {
                let mut values = vec![0; (d + 2) as usize];
                values[(d + 1) as usize] = m;
                BettiProfile::from_values(p, values)
            }
        })
    }
}

pub fn shape_suspend(s: WedgeShape, k: usize) -> WedgeShape {
    s.suspend(k)
}

pub fn betti_of_shape(s: WedgeShape, p: u64) -> Result<BettiProfile> {
    s.betti(p)
}

impl fmt::Display for WedgeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WedgeShape::Point => write!(f, "point"),
            WedgeShape::Wedge { m, d } => write!(f, "wedge({m},{d})"),
        }
    }
}

impl FromStr for WedgeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "point" {
            return Ok(WedgeShape::Point);
        }
        let bad = || Error::InvalidShape(format!("cannot parse `{s}`"));
        let inner = s
            .strip_prefix("wedge(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (m, d) = inner.split_once(',').ok_or_else(bad)?;
        WedgeShape::wedge(
            m.trim().parse().map_err(|_| bad())?,
            d.trim().parse().map_err(|_| bad())?,
        )
    }
}

/// The families whose shapes are predicted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CorollaryFamily {
    C1,
    C2,
    C3,
    M2,
    M3,
    CH1,
}

impl CorollaryFamily {
    pub const ALL: [CorollaryFamily; 6] = [
        CorollaryFamily::C1,
        CorollaryFamily::C2,
        CorollaryFamily::C3,
        CorollaryFamily::M2,
        CorollaryFamily::M3,
        CorollaryFamily::CH1,
    ];

    pub fn spec(self, n: usize) -> Result<FamilySpec> {
        let (tag, m) = match self {
            CorollaryFamily::C1 => (FamilyTag::C, 1),
            CorollaryFamily::C2 => (FamilyTag::C, 2),
            CorollaryFamily::C3 => (FamilyTag::C, 3),
            CorollaryFamily::M2 => (FamilyTag::M, 2),
            CorollaryFamily::M3 => (FamilyTag::M, 3),
            CorollaryFamily::CH1 => (FamilyTag::CH, 1),
        };
        FamilySpec::new(tag, m, n)
    }

    /// Shift in `n` and number of suspensions of the family recursion, with
    /// the family the recursion starts from.
    pub fn recursion(self) -> Option<(usize, usize, CorollaryFamily)> {
        match self {
            CorollaryFamily::C1 => Some((3, 1, CorollaryFamily::C1)),
            CorollaryFamily::C2 => Some((2, 1, CorollaryFamily::M2)),
            CorollaryFamily::M2 => Some((2, 1, CorollaryFamily::C2)),
            CorollaryFamily::C3 => Some((4, 3, CorollaryFamily::M3)),
            CorollaryFamily::M3 => Some((4, 3, CorollaryFamily::C3)),
            CorollaryFamily::CH1 => None,
        }
    }
}

impl fmt::Display for CorollaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CorollaryFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorollaryFamily::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidFamily(format!("unknown corollary family `{s}`")))
    }
}

/// The predicted shape of `I(family(n))`.
pub fn expected_shape(family: CorollaryFamily, n: usize) -> Result<WedgeShape> {
    if n == 0 {
        return Err(Error::InvalidShape(format!(
            "{family}: n must be at least 1"
        )));
    }
    let w = |m: u64, d: isize| WedgeShape::wedge(m, d);
    let by = |period: usize| ((n / period) as isize, n % period);
    match family {
        CorollaryFamily::C1 => {
            let (k, i) = by(3);
            match i {
                0 => w(2, k - 1),
                1 => w(1, k - 1),
                _ => w(1, k),
            }
        }
        CorollaryFamily::C2 => {
            let (k, i) = by(4);
            match i {
                0 => w(3, 2 * k - 1),
                1 => w(1, 2 * k - 1),
                2 => w(1, 2 * k),
                _ => w(1, 2 * k + 1),
            }
        }
        CorollaryFamily::C3 => {
            let (k, i) = by(8);
            match i {
                0 => w(5, 6 * k - 1),
                1 => w(1, 6 * k - 1),
                2 | 3 => w(1, 6 * k + 1),
                4 => w(3, 6 * k + 2),
                5 | 6 => w(1, 6 * k + 3),
                _ => w(1, 6 * k + 5),
            }
        }
        CorollaryFamily::M2 => {
            let (k, i) = by(4);
            match i {
                0 => w(1, 2 * k - 1),
                1 => w(1, 2 * k),
                2 => w(3, 2 * k),
                _ => w(1, 2 * k),
            }
        }
        CorollaryFamily::M3 => {
            let (k, i) = by(8);
            match i {
                0 => w(3, 6 * k - 1),
                1 | 2 => w(1, 6 * k),
                3 => w(1, 6 * k + 2),
                4 => w(5, 6 * k + 2),
                5 => w(1, 6 * k + 2),
                _ => w(1, 6 * k + 4),
            }
        }
        CorollaryFamily::CH1 => {
            if n % 2 == 0 {
                w(2, n as isize - 1)
            } else {
                Ok(WedgeShape::Point)
            }
        }
    }
}
