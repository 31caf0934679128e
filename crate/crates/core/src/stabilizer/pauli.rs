use std::fmt;

use crate::gf2::Gf2Vector;

/// `sign · X^x Z^z` on `n` qubits.
///
/// Writing operators as an X-part followed by a Z-part keeps every product
/// inside `{+1, -1}`: moving `Z^z1` past `X^x2` costs `(-1)^(z1·x2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: Gf2Vector,
    z: Gf2Vector,
    negative: bool,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: Gf2Vector::zeros(n),
            z: Gf2Vector::zeros(n),
            negative: false,
        }
    }

    pub fn new(x: Gf2Vector, z: Gf2Vector, negative: bool) -> Self {
        assert_eq!(x.len(), z.len());
        Self { x, z, negative }
    }

    pub fn x_type(support: Gf2Vector) -> Self {
        let n = support.len();
        Self::new(support, Gf2Vector::zeros(n), false)
    }

    pub fn z_type(support: Gf2Vector) -> Self {
        let n = support.len();
        Self::new(Gf2Vector::zeros(n), support, false)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &Gf2Vector {
        &self.x
    }

    pub fn z_part(&self) -> &Gf2Vector {
        &self.z
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Symplectic form `x1·z2 + z1·x2`.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let negative = self.negative ^ other.negative ^ self.z.dot(&other.x);
        Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            negative,
        }
    }

    /// Conjugation by a Hadamard on every qubit: `HXH = Z`, `HZH = X`,
    /// and `X^x Z^z` picks up `(-1)^(x·z)` when reordered.
    pub fn hadamard_all(&self) -> Self {
        Self {
            x: self.z.clone(),
            z: self.x.clone(),
            negative: self.negative ^ self.x.dot(&self.z),
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        for i in 0..self.n() {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                // X·Z at this site (equals -iY).
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}
