use rug::{Assign, Complex, Float};

/// Neumaier-compensated accumulator for complex terms, applied separately to
/// the real and imaginary parts.
pub struct CompensatedSum {
    sum: Complex,
    comp: Complex,
    t: Float,
    u: Float,
}

impl CompensatedSum {
    pub fn new(bits: u32) -> Self {
        CompensatedSum {
            sum: Complex::new(bits),
            comp: Complex::new(bits),
            t: Float::new(bits),
            u: Float::new(bits),
        }
    }

    pub fn add(&mut self, term: &Complex) {
        let (sr, si) = self.sum.as_mut_real_imag();
        let (cr, ci) = self.comp.as_mut_real_imag();
        neumaier(sr, cr, term.real(), &mut self.t, &mut self.u);
        neumaier(si, ci, term.imag(), &mut self.t, &mut self.u);
    }

    pub fn total(&self) -> Complex {
        Complex::with_val(self.sum.prec(), &self.sum + &self.comp)
    }
}

fn neumaier(sum: &mut Float, comp: &mut Float, x: &Float, t: &mut Float, u: &mut Float) {
    t.assign(&*sum + x);
    if sum.cmp_abs(x).map_or(true, |o| o.is_ge()) {
        u.assign(&*sum - &*t);
        *u += x;
    } else {
        u.assign(x - &*t);
        *u += &*sum;
    }
    *comp += &*u;
    sum.assign(&*t);
}
