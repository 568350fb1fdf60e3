use std::fmt;

/// Half-integral theta characteristic `[m; m']` in genus 3.
///
/// Each entry is stored as a bit: `0` stands for `0`, `1` for `1/2`. In the
/// series `m'` shifts the summation lattice and `m` enters the linear phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaCharacteristic {
    pub m: [u8; 3],
    pub m_prime: [u8; 3],
}

impl ThetaCharacteristic {
    pub fn new(m: [u8; 3], m_prime: [u8; 3]) -> Self {
        assert!(m.iter().chain(&m_prime).all(|&b| b <= 1), "entries are 0 or 1 (meaning 1/2)");
        ThetaCharacteristic { m, m_prime }
    }

    /// `4 m . m' mod 2`, i.e. the number of positions where both entries are 1/2.
    pub fn parity(&self) -> u8 {
        (self.m.iter().zip(&self.m_prime).map(|(a, b)| a * b).sum::<u8>()) % 2
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    pub fn m_half(&self) -> [f64; 3] {
        self.m.map(|b| b as f64 / 2.0)
    }

    pub fn m_prime_half(&self) -> [f64; 3] {
        self.m_prime.map(|b| b as f64 / 2.0)
    }

    /// All 64 characteristics, lexicographic in `(m', m)`.
    pub fn all() -> Vec<ThetaCharacteristic> {
        let bits = |v: u8| [(v >> 2) & 1, (v >> 1) & 1, v & 1];
        (0..8u8)
            .flat_map(|mp| (0..8u8).map(move |m| ThetaCharacteristic::new(bits(m), bits(mp))))
            .collect()
    }
}

impl fmt::Display for ThetaCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = |b: u8| if b == 1 { "1/2" } else { "0" };
        write!(
            f,
            "[{},{},{};{},{},{}]",
            h(self.m[0]),
            h(self.m[1]),
            h(self.m[2]),
            h(self.m_prime[0]),
            h(self.m_prime[1]),
            h(self.m_prime[2])
        )
    }
}

/// The 36 even characteristics, lexicographic in `(m', m)`.
pub fn enumerate_even_characteristics() -> Vec<ThetaCharacteristic> {
    ThetaCharacteristic::all().into_iter().filter(|c| c.is_even()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_counts() {
        let all = ThetaCharacteristic::all();
        assert_eq!(all.len(), 64);
        let even = enumerate_even_characteristics();
        assert_eq!(even.len(), 36);
        assert_eq!(all.iter().filter(|c| !c.is_even()).count(), 28);
        assert!(even.contains(&ThetaCharacteristic::new([0, 0, 0], [0, 0, 0])));
        assert!(!even.contains(&ThetaCharacteristic::new([1, 1, 1], [1, 1, 1])));
        assert_eq!(even[0], ThetaCharacteristic::new([0, 0, 0], [0, 0, 0]));
        assert!(even.windows(2).all(|w| (w[0].m_prime, w[0].m) < (w[1].m_prime, w[1].m)));
    }
}
