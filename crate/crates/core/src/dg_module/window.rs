use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite box of bidegrees: homological degrees `h_min..=h_max`, weights `w_min..=w_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BidegreeWindow {
    pub h_min: i64,
    pub h_max: i64,
    pub w_min: i64,
    pub w_max: i64,
}

/// Parses `hmin:hmax:wmax` or `hmin:hmax:wmin:wmax`.
impl std::str::FromStr for BidegreeWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<BidegreeWindow> {
        let parts: Vec<i64> = s
            .split(':')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Precondition(format!("window part `{p}`: {e}")))
            })
            .collect::<Result<_>>()?;
        match parts[..] {
            [a, b, c] => BidegreeWindow::new(a, b, c),
            [a, b, c, d] => BidegreeWindow::with_weights(a, b, c, d),
            _ => Err(Error::Precondition(
                "expected a window hmin:hmax:wmax or hmin:hmax:wmin:wmax".into(),
            )),
        }
    }
}

impl BidegreeWindow {
    /// Window with weights starting at 0.
    pub fn new(h_min: i64, h_max: i64, w_max: i64) -> Result<BidegreeWindow> {
        BidegreeWindow::with_weights(h_min, h_max, 0, w_max)
    }

    pub fn with_weights(h_min: i64, h_max: i64, w_min: i64, w_max: i64) -> Result<BidegreeWindow> {
        if h_min > h_max || w_min > w_max {
            return Err(Error::Precondition(format!(
                "empty window h {h_min}..{h_max}, w {w_min}..{w_max}"
            )));
        }
        Ok(BidegreeWindow {
            h_min,
            h_max,
            w_min,
            w_max,
        })
    }

    pub fn contains(&self, h: i64, w: i64) -> bool {
        (self.h_min..=self.h_max).contains(&h) && (self.w_min..=self.w_max).contains(&w)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.h_min..=self.h_max).flat_map(move |h| (self.w_min..=self.w_max).map(move |w| (h, w)))
    }

    /// Smallest window containing both.
    pub fn hull(&self, other: &BidegreeWindow) -> BidegreeWindow {
        BidegreeWindow {
            h_min: self.h_min.min(other.h_min),
            h_max: self.h_max.max(other.h_max),
            w_min: self.w_min.min(other.w_min),
            w_max: self.w_max.max(other.w_max),
        }
    }
}

impl fmt::Display for BidegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w_min == 0 {
            write!(f, "{}:{}:{}", self.h_min, self.h_max, self.w_max)
        } else {
            write!(f, "{}:{}:{}:{}", self.h_min, self.h_max, self.w_min, self.w_max)
        }
    }
}

/// Upper bounds below which a truncated module agrees with the module it was cut from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Truncation {
    pub h_max: i64,
    pub w_max: i64,
}

impl Truncation {
    pub fn covers(&self, h: i64, w: i64) -> bool {
        h <= self.h_max && w <= self.w_max
    }

    pub fn meet(a: Option<Truncation>, b: Option<Truncation>) -> Option<Truncation> {
        match (a, b) {
            (Some(a), Some(b)) => Some(Truncation {
                h_max: a.h_max.min(b.h_max),
                w_max: a.w_max.min(b.w_max),
            }),
            (a, None) => a,
            (None, b) => b,
        }
    }
}
