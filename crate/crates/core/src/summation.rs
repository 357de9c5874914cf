//! Accurate summation helpers.

/// Neumaier's compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Pairwise (cascade) summation. The result depends only on the order of
/// `values`, which makes it suitable for reproducible reductions.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Computes `Σ_{j<k} f(j)·g(k)` over the index range `0..n` in linear time.
///
/// The closed-form objectives are written as double sums over ordered pairs
/// of order statistics whose summands are products of a term in the smaller
/// index and a term in the larger one; this evaluates such a sum with a
/// running prefix of `f`.
pub fn ordered_pair_sum<F, G>(n: usize, f: F, g: G) -> f64
where
    F: Fn(usize) -> f64,
    G: Fn(usize) -> f64,
{
    let mut prefix = CompensatedSum::new();
    let mut total = CompensatedSum::new();
    for k in 0..n {
        if k > 0 {
            total.add(g(k) * prefix.value());
        }
        prefix.add(f(k));
    }
    total.value()
}
