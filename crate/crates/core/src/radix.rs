/// Mixed-radix encoding of tuples; the first coordinate is most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedRadix {
    radices: Vec<usize>,
}

impl MixedRadix {
    pub fn new(radices: Vec<usize>) -> Self {
        MixedRadix { radices }
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn size(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.radices.len());
        digits.iter().zip(&self.radices).fold(0, |acc, (&d, &r)| {
            debug_assert!(d < r);
            acc * r + d
        })
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = x % r;
            x /= r;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let r = MixedRadix::new(vec![2, 3, 4]);
        assert_eq!(r.size(), 24);
        for x in 0..24 {
            assert_eq!(r.encode(&r.decode(x)), x);
        }
        assert_eq!(r.encode(&[1, 0, 0]), 12);
        assert_eq!(MixedRadix::new(vec![]).size(), 1);
        assert_eq!(MixedRadix::new(vec![]).encode(&[]), 0);
    }
}
