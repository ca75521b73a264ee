//! Detection of abrupt slope changes ("sudden transitions") in sampled curves.

/// A point whose `|Δ²|` exceeds this multiple of the median `|Δ²|` is a kink.
pub const KINK_RATIO: f64 = 10.0;

/// `|Δ²|` below this is rounding noise on a straight segment, never a kink.
pub const KINK_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinkReport {
    /// Largest `|Δ²|` and the interior sample where it sits.
    pub max: f64,
    pub index: usize,
    pub median: f64,
}

impl KinkReport {
    pub fn ratio(&self) -> f64 {
        self.max / self.median
    }

    pub fn fires(&self) -> bool {
        self.max > KINK_FLOOR && self.max > KINK_RATIO * self.median
    }
}

/// `|y[i-1] − 2y[i] + y[i+1]|` for every interior sample.
pub fn second_differences(y: &[f64]) -> Vec<f64> {
    y.windows(3)
        .map(|w| (w[0] - 2.0 * w[1] + w[2]).abs())
        .collect()
}

/// `None` for fewer than three samples.
pub fn detect_kink(y: &[f64]) -> Option<KinkReport> {
    let d2 = second_differences(y);
    if d2.is_empty() {
        return None;
    }
    let (index, max) =
        d2.iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });
    let mut sorted = d2.clone();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Some(KinkReport {
        max,
        index: index + 1,
        median,
    })
}
