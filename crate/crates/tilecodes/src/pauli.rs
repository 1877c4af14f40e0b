//! Phase-free Pauli operators in the binary symplectic representation.
//!
//! An operator on `n` qubits is stored as two bit masks: `x` has bit `i` set
//! when the factor on qubit `i` contains an X component, `z` when it contains
//! a Z component. Both set means Y. Phases are not represented at all; two
//! operators are equal exactly when their masks are equal.
//!
//! All group arithmetic is word-parallel: products are XORs, commutation is
//! the parity of the symplectic inner product, weight is a popcount.

use crate::Error;
use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(num_qubits: usize) -> usize {
    num_qubits.div_ceil(WORD_BITS)
}

/// A phase-free `n`-qubit Pauli product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    num_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

/// Single-qubit Pauli letters, ordered X < Y < Z for labeling comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    /// (has X component, has Z component)
    pub fn components(self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

impl PauliOperator {
    /// The identity operator on `num_qubits` qubits.
    pub fn identity(num_qubits: usize) -> Self {
        let w = words_for(num_qubits);
        PauliOperator {
            num_qubits,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    /// A single-qubit letter at `index`, identity elsewhere.
    pub fn single_qubit(letter: Letter, index: usize, num_qubits: usize) -> Result<Self, Error> {
        if index >= num_qubits {
            return Err(Error::QubitOutOfRange { index, num_qubits });
        }
        let mut op = PauliOperator::identity(num_qubits);
        op.apply_letter(letter, index);
        Ok(op)
    }

    /// Multiplies `letter` onto qubit `index` in place. Index must be in range.
    pub fn apply_letter(&mut self, letter: Letter, index: usize) {
        debug_assert!(index < self.num_qubits);
        let (hx, hz) = letter.components();
        if hx {
            self.x[index / WORD_BITS] ^= 1 << (index % WORD_BITS);
        }
        if hz {
            self.z[index / WORD_BITS] ^= 1 << (index % WORD_BITS);
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    /// Group product (bitwise XOR of both masks; phases are dropped).
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator, Error> {
        self.check_size(other)?;
        let mut out = self.clone();
        out.multiply_assign(other);
        Ok(out)
    }

    /// In-place product with an operator of the same size.
    pub fn multiply_assign(&mut self, other: &PauliOperator) {
        debug_assert_eq!(self.num_qubits, other.num_qubits);
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    /// True when the operators anti-commute (symplectic inner product is odd).
    pub fn anti(&self, other: &PauliOperator) -> Result<bool, Error> {
        self.check_size(other)?;
        Ok(self.anti_unchecked(other))
    }

    /// `anti` without the size check; sizes must already match.
    #[inline]
    pub fn anti_unchecked(&self, other: &PauliOperator) -> bool {
        debug_assert_eq!(self.num_qubits, other.num_qubits);
        let mut parity = 0u64;
        for (a, b) in self.x.iter().zip(&other.z) {
            parity ^= a & b;
        }
        for (a, b) in self.z.iter().zip(&other.x) {
            parity ^= a & b;
        }
        parity.count_ones() % 2 == 1
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// The letter on qubit `index`, or `None` for identity.
    pub fn letter_at(&self, index: usize) -> Option<Letter> {
        debug_assert!(index < self.num_qubits);
        let w = index / WORD_BITS;
        let bit = 1u64 << (index % WORD_BITS);
        match (self.x[w] & bit != 0, self.z[w] & bit != 0) {
            (false, false) => None,
            (true, false) => Some(Letter::X),
            (true, true) => Some(Letter::Y),
            (false, true) => Some(Letter::Z),
        }
    }

    /// Parses a string over {I, X, Y, Z}, one character per qubit.
    pub fn parse(text: &str) -> Result<PauliOperator, Error> {
        let mut op = PauliOperator::identity(text.chars().count());
        for (i, c) in text.chars().enumerate() {
            match c {
                'I' => {}
                _ => match Letter::from_char(c) {
                    Some(l) => op.apply_letter(l, i),
                    None => return Err(Error::BadPauliChar { position: i, found: c }),
                },
            }
        }
        Ok(op)
    }

    /// Symplectic row `[x | z]` as words, used for GF(2) rank computations.
    pub fn symplectic_row(&self) -> Vec<u64> {
        let mut row = self.x.clone();
        row.extend_from_slice(&self.z);
        row
    }

    fn check_size(&self, other: &PauliOperator) -> Result<(), Error> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.num_qubits {
            let c = self.letter_at(i).map(Letter::to_char).unwrap_or('I');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses an operator-list file: one operator per line, `#` comments and blank
/// lines ignored, all operators the same length.
pub fn parse_operator_list(text: &str) -> Result<Vec<PauliOperator>, Error> {
    let mut ops: Vec<PauliOperator> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let op = PauliOperator::parse(line).map_err(|e| match e {
            Error::BadPauliChar { position, found } => Error::BadOperatorLine {
                line: lineno + 1,
                position,
                found,
            },
            other => other,
        })?;
        if let Some(first) = ops.first() {
            if first.num_qubits() != op.num_qubits() {
                return Err(Error::RaggedOperatorList {
                    line: lineno + 1,
                    expected: first.num_qubits(),
                    found: op.num_qubits(),
                });
            }
        }
        ops.push(op);
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::parse(s).unwrap()
    }

    #[test]
    fn multiply_single_qubit_algebra() {
        // X * Z = Y modulo phase
        assert_eq!(p("XI").multiply(&p("ZI")).unwrap(), p("YI"));
        // self-inverse
        let a = p("XYZI");
        assert!(a.multiply(&a).unwrap().is_identity());
        // componentwise xor
        assert_eq!(p("IZIX").multiply(&p("IZZI")).unwrap(), p("IIZX"));
    }

    #[test]
    fn multiply_rejects_size_mismatch() {
        assert!(p("XX").multiply(&p("X")).is_err());
        assert!(p("XX").anti(&p("X")).is_err());
    }

    #[test]
    fn anticommutation() {
        assert!(p("X").anti(&p("Z")).unwrap());
        assert!(!p("XX").anti(&p("ZZ")).unwrap());
        assert!(!p("II").anti(&p("XY")).unwrap());
        assert!(!p("Y").anti(&p("Y")).unwrap());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(p("III").weight(), 0);
        assert_eq!(p("IZIX").weight(), 2);
        assert_eq!(p("ZXY").weight(), 3);
    }

    #[test]
    fn single_qubit_constructor() {
        assert_eq!(
            PauliOperator::single_qubit(Letter::X, 0, 3).unwrap(),
            p("XII")
        );
        assert_eq!(
            PauliOperator::single_qubit(Letter::Y, 1, 2).unwrap(),
            p("IY")
        );
        assert_eq!(
            PauliOperator::single_qubit(Letter::Z, 2, 3).unwrap(),
            p("IIZ")
        );
        assert!(PauliOperator::single_qubit(Letter::X, 3, 3).is_err());
    }

    #[test]
    fn parse_format_round_trip() {
        for s in ["IZIX", "YY", "I", "XYZXYZXYZ"] {
            assert_eq!(p(s).to_string(), s);
        }
        match PauliOperator::parse("qI") {
            Err(Error::BadPauliChar { position: 0, found: 'q' }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn parse_crosses_word_boundary() {
        let mut s = "I".repeat(70);
        s.replace_range(65..66, "Y");
        let op = PauliOperator::parse(&s).unwrap();
        assert_eq!(op.weight(), 1);
        assert_eq!(op.letter_at(65), Some(Letter::Y));
        assert_eq!(op.to_string(), s);
    }

    #[test]
    fn operator_list_parsing() {
        let text = "# compass\nXXII\nIIXX  # rows\n\nZIZI\nIZIZ\n";
        let ops = parse_operator_list(text).unwrap();
        assert_eq!(ops.len(), 4);
        assert_eq!(ops[2], p("ZIZI"));
        assert!(parse_operator_list("XX\nXXX\n").is_err());
        assert!(parse_operator_list("XB\n").is_err());
    }
}
