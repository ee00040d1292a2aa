use serde::Serialize;

/// Closed parameter interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo < hi, "degenerate interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }

    pub fn lerp(&self, f: f64) -> f64 {
        self.lo + f * self.span()
    }

    /// `n` uniform nodes including both endpoints (`n >= 2`).
    pub fn uniform(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2);
        let h = self.span() / (n - 1) as f64;
        (0..n).map(|i| self.lo + i as f64 * h).collect()
    }

    /// The interval shrunk by `frac` of its span on each side.
    pub fn shrunk(&self, frac: f64) -> Interval {
        let m = self.span() * frac;
        Interval::new(self.lo + m, self.hi - m)
    }
}
