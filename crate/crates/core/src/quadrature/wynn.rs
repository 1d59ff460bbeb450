use num_complex::Complex64;

const MAX_DEPTH: usize = 48;

/// Incremental Wynn epsilon table for accelerating sequences of partial sums.
///
/// Only the latest anti-diagonal is kept: after `n + 1` sums, `diag[j]` holds
/// `ε_j^{(n-j)}`. Even columns are the accelerated estimates.
#[derive(Debug, Clone, Default)]
pub struct WynnEpsilon {
    diag: Vec<Complex64>,
    history: Vec<Complex64>,
}

impl WynnEpsilon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pushes the next partial sum and returns the current best estimate.
    pub fn push(&mut self, partial_sum: Complex64) -> Complex64 {
        let old = std::mem::take(&mut self.diag);
        let mut new = Vec::with_capacity((old.len() + 1).min(MAX_DEPTH));
        new.push(partial_sum);
        for j in 1..=old.len().min(MAX_DEPTH - 1) {
            let diff = new[j - 1] - old[j - 1];
            if diff.norm() <= f64::MIN_POSITIVE * 1e10 {
                break;
            }
            let before = if j >= 2 { old[j - 2] } else { Complex64::new(0.0, 0.0) };
            let next = before + diff.inv();
            if !(next.re.is_finite() && next.im.is_finite()) {
                break;
            }
            new.push(next);
        }
        self.diag = new;
        let best = self.best();
        self.history.push(best);
        best
    }

    /// Highest even-column entry on the current diagonal.
    pub fn best(&self) -> Complex64 {
        let last_even = (self.diag.len() - 1) & !1;
        self.diag[last_even]
    }

    /// Change in the accelerated estimate caused by the most recent sum.
    pub fn last_change(&self) -> f64 {
        match self.history.len() {
            0 | 1 => f64::INFINITY,
            n => (self.history[n - 1] - self.history[n - 2]).norm(),
        }
    }

    /// Largest change over the last `k` accelerated estimates.
    pub fn recent_spread(&self, k: usize) -> f64 {
        let n = self.history.len();
        if n < k + 1 {
            return f64::INFINITY;
        }
        self.history[n - k - 1..]
            .windows(2)
            .map(|w| (w[1] - w[0]).norm())
            .fold(0.0, f64::max)
    }
}
