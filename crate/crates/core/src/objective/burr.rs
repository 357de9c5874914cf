use super::OrderedTerms;
use crate::error::Result;
use crate::models::ParamVector;
use crate::sample::Sample;
use crate::special::logistic;

/// Exact `ψ²_{n,2}(c, k)` for the Burr XII family.
///
/// With `A_j = −u(X_(j))` and `B_j = −c(k+1)X_(j)^c / (1 + X_(j)^c)` the
/// objective is a sum over ordered pairs plus diagonal terms; the pair sum
/// factorizes and is accumulated with prefix sums.
pub fn psi2_closed_burr(c: f64, k: f64, sample: &Sample, a: f64) -> Result<f64> {
    ParamVector::burr(c, k)?;
    Ok(BurrObjective::new(sample, a)?.eval(c, k))
}

/// The Burr closed form with the parameter-free terms computed once, for
/// repeated evaluation inside an optimizer.
pub(crate) struct BurrObjective<'a> {
    o: OrderedTerms<'a>,
    ln_x: Vec<f64>,
    a: f64,
}

impl<'a> BurrObjective<'a> {
    pub fn new(sample: &'a Sample, a: f64) -> Result<Self> {
        let o = OrderedTerms::new(sample, a)?;
        let ln_x = o.x.iter().map(|x| x.ln()).collect();
        Ok(Self { o, ln_x, a })
    }

    pub fn eval(&self, c: f64, k: f64) -> f64 {
        let o = &self.o;
        let (n, x, e, om, a) = (o.n, o.x, &o.e, &o.one_minus_e, self.a);
        let a2 = a * a;
        let a3 = a2 * a;

        let big_b: Vec<f64> = self
            .ln_x
            .iter()
            .map(|&l| -c * (k + 1.0) * logistic(c * l))
            .collect();
        let big_a: Vec<f64> = (0..o.len())
            .map(|j| (-big_b[j] - (c - 1.0)) / x[j])
            .collect();

        let pair = o.pairs(
            |j| {
                2.0 * big_a[j] * om[j] / a3 + big_b[j] * e[j] / a2 + (c - 2.0) * e[j] / a2
                    - x[j] * e[j] / a
            },
            |l| big_a[l],
        ) + o.pairs(|j| big_b[j], |l| big_a[l] * e[l] / a2 + e[l] / a);

        let diag = o.sum(|j| {
            let r = (j + 1) as f64;
            big_a[j] * big_a[j] * (2.0 * om[j] / a3 - 2.0 * x[j] * e[j] / a2)
                + 2.0 * (r - 1.0) * c * big_a[j] * e[j] / a2
                + 2.0 * big_b[j] * e[j] / a
                + 2.0 * c * r * e[j] / a
                - e[j] / a
        });

        (2.0 * pair + diag) / (n * n)
    }
}
