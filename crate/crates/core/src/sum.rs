//! Compensated accumulation and log-space sums.

use std::ops::{Add, AddAssign};

/// Kahan-Babuska-Neumaier running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }

    fn scale(&mut self, factor: f64) {
        self.sum *= factor;
        self.comp *= factor;
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let c = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, c)
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        let (s, c) = two_sum(self.sum, rhs);
        self.sum = s;
        self.comp += c;
    }
}

impl Add for NeumaierSum {
    type Output = NeumaierSum;

    fn add(self, rhs: Self) -> Self {
        let (s, c) = two_sum(self.sum, rhs.sum);
        Self { sum: s, comp: self.comp + rhs.comp + c }
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc += x;
        }
        acc
    }
}

/// Compensated sum of a slice.
pub fn neumaier_sum(values: &[f64]) -> f64 {
    values.iter().copied().collect::<NeumaierSum>().total()
}

/// Sum of `exp(x_i)` for log-space terms `x_i`, stored as `exp(scale) * mantissa`.
///
/// The scale tracks the largest term seen so far, so that neither a single
/// huge term nor millions of tiny ones leave binary64 range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSum {
    scale: f64,
    mantissa: NeumaierSum,
    count: u64,
}

impl Default for LogSum {
    fn default() -> Self {
        Self { scale: f64::NEG_INFINITY, mantissa: NeumaierSum::new(), count: 0 }
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `exp(log_term)`. `+inf` makes the sum infinite, `-inf` adds zero.
    pub fn push(&mut self, log_term: f64) {
        self.count += 1;
        if log_term == f64::NEG_INFINITY {
            return;
        }
        if log_term > self.scale {
            if self.scale != f64::NEG_INFINITY {
                self.mantissa.scale((self.scale - log_term).exp());
            }
            self.scale = log_term;
        }
        if self.scale == f64::INFINITY {
            self.mantissa = NeumaierSum::new();
            self.mantissa += 1.0;
            return;
        }
        self.mantissa += (log_term - self.scale).exp();
    }

    pub fn merge(mut self, mut other: LogSum) -> LogSum {
        let count = self.count + other.count;
        if other.scale > self.scale {
            std::mem::swap(&mut self, &mut other);
        }
        if other.scale != f64::NEG_INFINITY && self.scale.is_finite() {
            other.mantissa.scale((other.scale - self.scale).exp());
            self.mantissa = self.mantissa + other.mantissa;
        }
        self.count = count;
        self
    }

    /// Number of terms pushed (including zero terms).
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn value(&self) -> f64 {
        if self.scale == f64::NEG_INFINITY {
            return 0.0;
        }
        if self.scale == f64::INFINITY {
            return f64::INFINITY;
        }
        self.scale.exp() * self.mantissa.total()
    }

    /// Natural log of the sum; `-inf` when empty.
    pub fn ln(&self) -> f64 {
        if self.scale == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        self.scale + self.mantissa.total().ln()
    }
}

/// Reduces `items` by recursive halving in index order.
///
/// The combination tree depends only on `items.len()`, so the result is the
/// same no matter how the items were produced.
pub fn pairwise_reduce<T, F>(mut items: Vec<T>, merge: &F) -> Option<T>
where
    F: Fn(T, T) -> T,
{
    match items.len() {
        0 => None,
        1 => items.pop(),
        n => {
            let right = items.split_off(n / 2);
            let l = pairwise_reduce(items, merge)?;
            let r = pairwise_reduce(right, merge)?;
            Some(merge(l, r))
        }
    }
}
