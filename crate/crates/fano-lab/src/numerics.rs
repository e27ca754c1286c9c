//! Small floating-point helpers: unit-ball volumes, zeta values, and
//! compensated summation.

/// Volume of the unit ball in R^n, via V_n = (2 pi / n) V_{n-2}.
pub fn ball_volume(n: usize) -> f64 {
    assert!(n >= 1);
    let mut even = 1.0; // V_0
    let mut odd = 2.0; // V_1
    if n == 1 {
        return odd;
    }
    let mut k = 1;
    loop {
        k += 1;
        if k % 2 == 0 {
            even *= 2.0 * std::f64::consts::PI / k as f64;
            if k == n {
                return even;
            }
        } else {
            odd *= 2.0 * std::f64::consts::PI / k as f64;
            if k == n {
                return odd;
            }
        }
    }
}

/// Riemann zeta at an integer s >= 2 by Euler-Maclaurin, abs error < 1e-13.
pub fn zeta(s: usize) -> f64 {
    assert!(s >= 2);
    let s = s as f64;
    let m = 24.0f64;
    let mut sum = 0.0;
    let mut n = 1.0;
    while n < m {
        sum += n.powf(-s);
        n += 1.0;
    }
    sum += m.powf(-s) / 2.0;
    sum += m.powf(1.0 - s) / (s - 1.0);
    sum += s * m.powf(-s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * m.powf(-s - 3.0) / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * m.powf(-s - 5.0) / 30240.0;
    sum
}

/// Kahan-Babuska compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert!((ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((ball_volume(2) - std::f64::consts::PI).abs() < 1e-14);
        assert!((ball_volume(3) - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-14);
        let pi = std::f64::consts::PI;
        assert!((ball_volume(4) - pi * pi / 2.0).abs() < 1e-13);
    }

    #[test]
    fn zeta_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta(2) - pi * pi / 6.0).abs() < 1e-12);
        assert!((zeta(4) - pi.powi(4) / 90.0).abs() < 1e-12);
        assert!((zeta(3) - 1.2020569031595942).abs() < 1e-12);
    }

    #[test]
    fn kahan_beats_naive_on_alternating_series() {
        let mut k = Kahan::new();
        for i in 0..100000 {
            k.add(if i % 2 == 0 { 1e-8 } else { 1.0 });
        }
        let expected = 50000.0 * (1.0 + 1e-8);
        assert!((k.total() - expected).abs() < 1e-9);
    }
}
