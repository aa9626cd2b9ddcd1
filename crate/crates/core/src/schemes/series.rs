use crate::scalar::Real;

/// Structure load `beta p^{n+1}_j` of one mode written out as the unrolled
/// series in the external data:
///
/// ```text
/// beta p_ext^{n+1} + sum_{i=1}^{n} beta^{i+1} lambda^i p_ext^{n+1-i} + beta^{n+2} lambda^{n+1} p^0
/// ```
///
/// `p_ext[k]` holds `p_ext` at time level `k + 1`, so the slice needs at least
/// `n + 1` entries.
pub fn pressure_series<T: Real>(n: usize, beta: T, lambda: T, p_ext: &[T], p0: T) -> T {
    assert!(p_ext.len() > n, "p_ext history must cover levels 1..={}", n + 1);
    let mut sum = beta * p_ext[n];
    // coefficient beta^{i+1} lambda^i
    let mut coeff = beta;
    for i in 1..=n {
        coeff = coeff * beta * lambda;
        sum = sum + coeff * p_ext[n - i];
    }
    sum + coeff * beta * lambda * p0
}
