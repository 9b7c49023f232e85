//! Exact metric values and cost tuples.
//!
//! Every metric value is an exact rational (integers in practice for file
//! data) or the infinity sentinel, so dominance tests never depend on float
//! tolerances.

use std::cmp::Ordering;
use std::fmt;

pub type Rational = num::rational::Rational64;

/// One metric value: a non-negative exact rational or +infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Fin(Rational),
    Inf,
}

impl Metric {
    pub fn from_int(v: i64) -> Metric {
        Metric::Fin(Rational::from_integer(v))
    }

    pub fn rational(num: i64, den: i64) -> Metric {
        Metric::Fin(Rational::new(num, den))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Metric::Fin(_))
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Metric::Fin(x) => Some(*x),
            Metric::Inf => None,
        }
    }

    /// Numeric order with infinity as the greatest element.
    pub fn num_cmp(&self, other: &Metric) -> Ordering {
        match (self, other) {
            (Metric::Inf, Metric::Inf) => Ordering::Equal,
            (Metric::Inf, Metric::Fin(_)) => Ordering::Greater,
            (Metric::Fin(_), Metric::Inf) => Ordering::Less,
            (Metric::Fin(a), Metric::Fin(b)) => a.cmp(b),
        }
    }

    pub fn num_min(&self, other: &Metric) -> Metric {
        if self.num_cmp(other) == Ordering::Greater { *other } else { *self }
    }

    pub fn num_max(&self, other: &Metric) -> Metric {
        if self.num_cmp(other) == Ordering::Less { *other } else { *self }
    }

    pub fn saturating_add(&self, other: &Metric) -> Metric {
        match (self, other) {
            (Metric::Fin(a), Metric::Fin(b)) => Metric::Fin(a + b),
            _ => Metric::Inf,
        }
    }

    pub fn saturating_mul(&self, other: &Metric) -> Metric {
        match (self, other) {
            (Metric::Fin(a), Metric::Fin(b)) => Metric::Fin(a * b),
            _ => Metric::Inf,
        }
    }

    /// Multiplies by a finite rational weight; infinity absorbs.
    pub fn scale(&self, w: &Rational) -> Metric {
        match self {
            Metric::Fin(a) => Metric::Fin(a * w),
            Metric::Inf => Metric::Inf,
        }
    }

    /// Parses `inf`, an integer, or `num/den`.
    pub fn parse(token: &str) -> Option<Metric> {
        if token == "inf" {
            return Some(Metric::Inf);
        }
        if let Some((n, d)) = token.split_once('/') {
            let n: i64 = n.parse().ok()?;
            let d: i64 = d.parse().ok()?;
            if d == 0 {
                return None;
            }
            return Some(Metric::Fin(Rational::new(n, d)));
        }
        token.parse::<i64>().ok().map(Metric::from_int)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Inf => f.write_str("inf"),
            Metric::Fin(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Metric::Fin(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}

/// A tuple of metric values, one per declared dimension. This is the element
/// type routed through every search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiCost(Vec<Metric>);

impl MultiCost {
    pub fn new(values: Vec<Metric>) -> Self {
        MultiCost(values)
    }

    pub fn from_ints(values: &[i64]) -> Self {
        MultiCost(values.iter().map(|v| Metric::from_int(*v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Metric] {
        &self.0
    }

    pub fn get(&self, dim: usize) -> &Metric {
        &self.0[dim]
    }

    /// Parses a comma-separated value list like `10,1` or `inf,0` or `1/2`.
    pub fn parse(text: &str) -> Option<MultiCost> {
        let vals: Option<Vec<Metric>> = text.split(',').map(Metric::parse).collect();
        vals.map(MultiCost)
    }

    /// Deterministic value-level order (not the preference order): compares
    /// component by component in numeric order. Used for canonical sorting.
    pub fn value_cmp(&self, other: &MultiCost) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.num_cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl fmt::Display for MultiCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
