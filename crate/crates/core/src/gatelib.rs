//! Gates, measurement-basis families, and the flip-pattern labelling of
//! Pauli output errors.
//!
//! Qubit 0 is the control and the leftmost tensor factor. In bit masks it is
//! the most significant bit, so for two qubits the control flip `C` is `0b10`
//! and the target flip `T` is `0b01`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::{tensor, CMatrix, CVector, I, ONE, ZERO};

/// Two-qubit dimension used by the gate catalog.
pub const TWO_QUBIT_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMatrix {
        let m = match self {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -I, I, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        CMatrix::new(2, 2, m.to_vec()).expect("2x2 literal")
    }

    /// Flips the Z-basis value of the qubit (X and Y).
    pub fn flips_z(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Flips the X-basis value of the qubit (Z and Y).
    pub fn flips_x(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// A tensor product of single-qubit Paulis, written control first ("ZX").
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel(Vec<Pauli>);

impl PauliLabel {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::MalformedLabel(String::new()));
        }
        Ok(Self(letters))
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self(vec![Pauli::I; n_qubits])
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Position in base-4 order (I, X, Y, Z per letter, control most significant).
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, p| acc * 4 + p.index())
    }

    pub fn from_index(n_qubits: usize, mut index: usize) -> Self {
        let mut letters = vec![Pauli::I; n_qubits];
        for slot in letters.iter_mut().rev() {
            *slot = Pauli::ALL[index % 4];
            index /= 4;
        }
        Self(letters)
    }

    /// All `4^n` labels in index order.
    pub fn all(n_qubits: usize) -> Vec<PauliLabel> {
        (0..4usize.pow(n_qubits as u32))
            .map(|i| Self::from_index(n_qubits, i))
            .collect()
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters: Option<Vec<Pauli>> = s.chars().map(Pauli::from_char).collect();
        match letters {
            Some(l) if !l.is_empty() => Ok(Self(l)),
            _ => Err(Error::MalformedLabel(s.to_string())),
        }
    }
}

/// Tensor product of the single-qubit Pauli matrices named by `label`.
pub fn pauli(label: &PauliLabel) -> CMatrix {
    label
        .letters()
        .iter()
        .skip(1)
        .fold(label.letters()[0].matrix(), |acc, p| {
            tensor(&acc, &p.matrix())
        })
}

/// Parses and builds in one step, e.g. `pauli_str("XI")`.
pub fn pauli_str(label: &str) -> Result<CMatrix> {
    Ok(pauli(&label.parse()?))
}

/// Controlled-NOT with qubit 0 as control.
pub fn cnot() -> CMatrix {
    CMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .expect("4x4 literal")
}

/// Symbol for an N=2 flip mask: `0`, `C`, `T`, `B`.
pub fn mask_symbol(mask: u32) -> char {
    match mask {
        0b00 => '0',
        0b10 => 'C',
        0b01 => 'T',
        0b11 => 'B',
        _ => '?',
    }
}

pub fn symbol_mask(symbol: char) -> Option<u32> {
    match symbol {
        '0' => Some(0b00),
        'C' => Some(0b10),
        'T' => Some(0b01),
        'B' => Some(0b11),
        _ => None,
    }
}

/// Which output bits an error flips in the Z basis and in the X basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipPattern {
    pub n_qubits: usize,
    pub z_mask: u32,
    pub x_mask: u32,
}

impl FlipPattern {
    pub fn is_identity(&self) -> bool {
        self.z_mask == 0 && self.x_mask == 0
    }

    /// Inverse of [`flip_pattern`].
    pub fn to_label(&self) -> PauliLabel {
        let n = self.n_qubits;
        let letters = (0..n)
            .map(|q| {
                let bit = 1 << (n - 1 - q);
                match (self.z_mask & bit != 0, self.x_mask & bit != 0) {
                    (false, false) => Pauli::I,
                    (true, false) => Pauli::X,
                    (true, true) => Pauli::Y,
                    (false, true) => Pauli::Z,
                }
            })
            .collect();
        PauliLabel(letters)
    }
}

/// Rendered as `j_z j_x`, e.g. "TC"; only defined symbolically for two qubits.
impl fmt::Display for FlipPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_qubits == 2 {
            write!(
                f,
                "{}{}",
                mask_symbol(self.z_mask),
                mask_symbol(self.x_mask)
            )
        } else {
            write!(
                f,
                "z{:0w$b}x{:0w$b}",
                self.z_mask,
                self.x_mask,
                w = self.n_qubits
            )
        }
    }
}

impl FromStr for FlipPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (
            chars.next().and_then(symbol_mask),
            chars.next().and_then(symbol_mask),
            chars.next(),
        ) {
            (Some(z_mask), Some(x_mask), None) => Ok(FlipPattern {
                n_qubits: 2,
                z_mask,
                x_mask,
            }),
            _ => Err(Error::MalformedLabel(s.to_string())),
        }
    }
}

/// Z-basis flips where a letter is X or Y, X-basis flips where it is Z or Y.
pub fn flip_pattern(label: &PauliLabel) -> FlipPattern {
    let n = label.n_qubits();
    let mut pattern = FlipPattern {
        n_qubits: n,
        z_mask: 0,
        x_mask: 0,
    };
    for (q, p) in label.letters().iter().enumerate() {
        let bit = 1 << (n - 1 - q);
        if p.flips_z() {
            pattern.z_mask |= bit;
        }
        if p.flips_x() {
            pattern.x_mask |= bit;
        }
    }
    pattern
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Control and target in Z eigenstates.
    ZProduct,
    /// Control and target in X eigenstates.
    XProduct,
    /// Control in Z, target in X: eigenstates of the CNOT.
    ZxEigen,
    /// Control in X, target in Z: inputs of the entangler.
    XzEigen,
    /// The four Bell states reached from the `XzEigen` family.
    Bell,
}

impl BasisKind {
    pub const ALL: [BasisKind; 5] = [
        BasisKind::ZProduct,
        BasisKind::XProduct,
        BasisKind::ZxEigen,
        BasisKind::XzEigen,
        BasisKind::Bell,
    ];

    /// Family on which the ideal gate's outputs are measured.
    pub fn output_kind(self) -> BasisKind {
        match self {
            BasisKind::XzEigen => BasisKind::Bell,
            BasisKind::Bell => BasisKind::XzEigen,
            other => other,
        }
    }

    /// Short tag used in files: "Z", "X", "ZX", "XZ", "BELL".
    pub fn tag(self) -> &'static str {
        match self {
            BasisKind::ZProduct => "Z",
            BasisKind::XProduct => "X",
            BasisKind::ZxEigen => "ZX",
            BasisKind::XzEigen => "XZ",
            BasisKind::Bell => "BELL",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag.to_ascii_uppercase().as_str() {
            "Z" => Ok(BasisKind::ZProduct),
            "X" => Ok(BasisKind::XProduct),
            "ZX" => Ok(BasisKind::ZxEigen),
            "XZ" => Ok(BasisKind::XzEigen),
            "BELL" => Ok(BasisKind::Bell),
            _ => Err(Error::UnsupportedBasis(tag.to_string())),
        }
    }

    /// Canonical member labels, index order: "0z0z".."1z1z", "phi+", ...
    pub fn member_labels(self) -> Vec<String> {
        let (c, t) = match self {
            BasisKind::ZProduct => ('z', 'z'),
            BasisKind::XProduct => ('x', 'x'),
            BasisKind::ZxEigen => ('z', 'x'),
            BasisKind::XzEigen => ('x', 'z'),
            BasisKind::Bell => {
                return ["phi+", "psi+", "phi-", "psi-"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
            }
        };
        (0..4)
            .map(|k| format!("{}{}{}{}", k >> 1, c, k & 1, t))
            .collect()
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct BasisFamily {
    pub kind: BasisKind,
    pub members: Vec<CVector>,
    /// The ideal gate sends member `k` to member `ideal_permutation[k]` of
    /// the family `kind.output_kind()`, up to a global phase.
    pub ideal_permutation: Vec<usize>,
}

impl BasisFamily {
    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn output_family(&self) -> BasisFamily {
        basis_family(self.kind.output_kind())
    }
}

fn zero_z() -> CVector {
    CVector::basis(2, 0)
}

fn one_z() -> CVector {
    CVector::basis(2, 1)
}

fn zero_x() -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVector::from_real(&[s, s]).expect("nonempty")
}

fn one_x() -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVector::from_real(&[s, -s]).expect("nonempty")
}

fn single(bit: usize, x_basis: bool) -> CVector {
    match (bit, x_basis) {
        (0, false) => zero_z(),
        (_, false) => one_z(),
        (0, true) => zero_x(),
        (_, true) => one_x(),
    }
}

fn products(control_x: bool, target_x: bool) -> Vec<CVector> {
    (0..4)
        .map(|k| single(k >> 1, control_x).tensor(&single(k & 1, target_x)))
        .collect()
}

pub fn basis_family(kind: BasisKind) -> BasisFamily {
    let (members, ideal_permutation) = match kind {
        // classical CNOT: (c, t) -> (c, t ^ c)
        BasisKind::ZProduct => (products(false, false), vec![0, 1, 3, 2]),
        // reversed CNOT: (c, t) -> (c ^ t, t)
        BasisKind::XProduct => (products(true, true), vec![0, 3, 2, 1]),
        BasisKind::ZxEigen => (products(false, true), vec![0, 1, 2, 3]),
        BasisKind::XzEigen => (products(true, false), vec![0, 1, 2, 3]),
        BasisKind::Bell => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let bell = |a: [f64; 4]| CVector::from_real(&a.map(|x| x * s)).expect("nonempty");
            (
                vec![
                    bell([1.0, 0.0, 0.0, 1.0]),
                    bell([0.0, 1.0, 1.0, 0.0]),
                    bell([1.0, 0.0, 0.0, -1.0]),
                    bell([0.0, 1.0, -1.0, 0.0]),
                ],
                vec![0, 1, 2, 3],
            )
        }
    };
    BasisFamily {
        kind,
        members,
        ideal_permutation,
    }
}

/// Pauli output errors that leave every member of `output` invariant up to
/// a global phase. Defined for the three derived operations' output families.
pub fn preserved_errors(output: BasisKind) -> Result<Vec<PauliLabel>> {
    let labels: &[&str] = match output {
        BasisKind::ZxEigen => &["II", "ZI", "IX", "ZX"],
        BasisKind::Bell => &["II", "XX", "YY", "ZZ"],
        BasisKind::XzEigen => &["II", "XI", "IZ", "XZ"],
        other => return Err(Error::UnsupportedBasis(other.tag().to_string())),
    };
    labels.iter().map(|s| s.parse()).collect()
}

/// Scalar helper used by tests and the simulator: `|⟨m|P|m⟩|`.
pub fn diagonal_overlap(op: &CMatrix, state: &CVector) -> f64 {
    let image = op.apply(state).expect("dimension checked by caller");
    let amp: Complex64 = state.inner(&image);
    amp.norm()
}
