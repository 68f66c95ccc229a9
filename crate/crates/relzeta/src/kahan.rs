//! Compensated (Kahan-Neumaier) summation for real and complex values.
//!
//! Zero sums and prime sums routinely run over 1e4..1e6 terms of mixed
//! magnitude; plain f64 accumulation loses several digits there.

use num_complex::Complex64;

/// Neumaier variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sums an iterator with compensation.
pub fn sum_compensated<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = KahanSum::new();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}

/// Sums a complex iterator with compensation.
pub fn sum_compensated_complex<I: IntoIterator<Item = Complex64>>(iter: I) -> Complex64 {
    let mut acc = KahanComplex::new();
    for z in iter {
        acc.add(z);
    }
    acc.value()
}
