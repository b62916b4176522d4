//! Small statistics helpers shared by the validators and the harness.

use num_traits::Float;

pub fn mean<F: Float>(xs: &[F]) -> Option<F> {
    if xs.is_empty() {
        return None;
    }
    let sum = xs.iter().fold(F::zero(), |acc, &x| acc + x);
    Some(sum / F::from(xs.len()).unwrap())
}

/// Median of the values (mean of the middle two for even lengths).
pub fn median<F: Float>(xs: &[F]) -> Option<F> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("median of NaN"));
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / F::from(2).unwrap()
    })
}

/// Two-sample Kolmogorov–Smirnov statistic `sup_x |F_a(x) − F_b(x)|`.
///
/// Ties are handled by advancing both empirical CDFs past a shared value
/// before comparing, which is what matters for integer-valued samples.
pub fn ks_two_sample<T: PartialOrd + Copy>(a: &[T], b: &[T]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.len() == b.len() { 0.0 } else { 1.0 };
    }
    let cmp = |x: &T, y: &T| x.partial_cmp(y).expect("incomparable sample value");
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(cmp);
    b.sort_by(cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut sup: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        sup = sup.max((i as f64 / na - j as f64 / nb).abs());
    }
    sup
}
