//! Discrepancy measures between sampled fields on a shared uniform grid.

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `||a - b|| / ||b||`; zero when both vanish, infinite when only `b` does.
pub fn relative_l2(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "fields must share a grid");
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let nb = norm(b);
    if nb == 0.0 {
        if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        diff / nb
    }
}

/// L2 distance between the unit-normalized shapes `a/||a||` and `b/||b||`.
pub fn shape_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "fields must share a grid");
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x / na - y / nb;
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Indices of strict local maxima above `floor * max`.
pub fn local_maxima(a: &[f64], floor: f64) -> Vec<usize> {
    let max = a.iter().fold(0.0f64, |m, v| m.max(*v));
    let threshold = floor * max;
    (1..a.len().saturating_sub(1))
        .filter(|&i| a[i] > a[i - 1] && a[i] >= a[i + 1] && a[i] > threshold)
        .collect()
}
