//! Pauli words, Pauli sums and the Pauli decomposition of qubit operators.
//!
//! Letter `k` of a word acts on qubit `k`, which is bit `n - 1 - k` of a basis
//! index (qubit 0 is the most significant tensor factor).
//!
//! Text forms:
//! - word: optional phase prefix `+`, `-`, `+i`, `-i` followed by letters
//!   over `IXYZ`, e.g. `-iXZI`. The Unicode minus `−` is accepted on input.
//! - sum: `;`-separated `coeff*word` entries with `coeff` written `a+bi`,
//!   e.g. `0.5+0i*ZZ; -1+0i*XI`. A bare word means coefficient one.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, I, ONE, ZERO};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        use crate::gates::standard;
        match self {
            Pauli::I => standard::identity(),
            Pauli::X => standard::x(),
            Pauli::Y => standard::y(),
            Pauli::Z => standard::z(),
        }
    }
}

/// A phase in `{1, -1, i, -i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Phase {
    #[default]
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl Phase {
    pub fn value(self) -> C64 {
        match self {
            Phase::PlusOne => ONE,
            Phase::MinusOne => -ONE,
            Phase::PlusI => I,
            Phase::MinusI => -I,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Phase::PlusOne => "",
            Phase::MinusOne => "-",
            Phase::PlusI => "+i",
            Phase::MinusI => "-i",
        }
    }
}

/// `phase` times the tensor product of single-qubit letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    letters: Vec<Pauli>,
    phase: Phase,
}

impl PauliWord {
    pub fn new(letters: Vec<Pauli>, phase: Phase) -> Self {
        Self { letters, phase }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![Pauli::I; n], Phase::PlusOne)
    }

    /// Single non-identity letter on `qubit` of an `n`-qubit word.
    pub fn single(n: usize, qubit: usize, letter: Pauli) -> Self {
        let mut letters = vec![Pauli::I; n];
        letters[qubit] = letter;
        Self::new(letters, Phase::PlusOne)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    fn masks(&self) -> (usize, usize, u32) {
        let n = self.letters.len();
        let (mut xm, mut zm, mut ny) = (0usize, 0usize, 0u32);
        for (q, &p) in self.letters.iter().enumerate() {
            let bit = 1 << (n - 1 - q);
            let (x, z) = p.bits();
            if x {
                xm |= bit;
            }
            if z {
                zm |= bit;
            }
            if x && z {
                ny += 1;
            }
        }
        (xm, zm, ny)
    }

    /// Dense matrix of the word, including its phase.
    pub fn matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(1 << self.letters.len());
        self.accumulate_into(ONE, &mut m);
        m
    }

    /// `m += coeff * word`, exploiting that a word has one nonzero per row.
    fn accumulate_into(&self, coeff: C64, m: &mut ComplexMatrix) {
        let (xm, zm, ny) = self.masks();
        let base = coeff * self.phase.value() * (-I).powu(ny);
        for r in 0..m.dim() {
            let c = r ^ xm;
            let v = if (r & zm).count_ones() % 2 == 0 {
                m.get(r, c) + base
            } else {
                m.get(r, c) - base
            };
            m.set(r, c, v);
        }
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for p in &self.letters {
            write!(f, "{}", p.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('\u{2212}', "-");
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::PlusI, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MinusI, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (Phase::PlusI, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::PlusOne, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MinusOne, r)
        } else {
            (Phase::PlusOne, s.as_str())
        };
        if rest.is_empty() {
            return Err(Error::Parse(format!("empty Pauli word in `{s}`")));
        }
        let letters = rest
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::Parse(format!("invalid Pauli letter `{c}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(letters, phase))
    }
}

/// One term of a [`PauliSum`]; the word's phase is always folded into `coeff`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coeff: C64,
    pub word: PauliWord,
}

/// A linear combination of `n`-qubit Pauli words with distinct letter strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    /// Merges duplicate letter strings, folds word phases into coefficients
    /// and prunes coefficients at or below the pruning threshold.
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = (C64, PauliWord)>) -> Result<Self> {
        Self::with_prune(n_qubits, terms, tolerance::PAULI_PRUNE)
    }

    pub fn with_prune(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (C64, PauliWord)>,
        prune: f64,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Vec<Pauli>, C64> = BTreeMap::new();
        for (c, w) in terms {
            if w.len() != n_qubits {
                return Err(Error::WordLength {
                    expected: n_qubits,
                    found: w.len(),
                });
            }
            *merged.entry(w.letters).or_insert(ZERO) += c * w.phase.value();
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() > prune)
            .map(|(letters, coeff)| PauliTerm {
                coeff,
                word: PauliWord::new(letters, Phase::PlusOne),
            })
            .collect();
        Ok(Self { n_qubits, terms })
    }

    /// The single word `coeff * word`.
    pub fn from_word(coeff: C64, word: PauliWord) -> Self {
        let n = word.len();
        Self::new(n, [(coeff, word)]).expect("word length matches by construction")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given letter string (zero when absent).
    pub fn coefficient(&self, letters: &[Pauli]) -> C64 {
        self.terms
            .iter()
            .find(|t| t.word.letters == letters)
            .map_or(ZERO, |t| t.coeff)
    }

    /// A Pauli sum is Hermitian iff every coefficient is real.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Pads every word with identities up to `n` qubits.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if n < self.n_qubits {
            return Err(Error::WordLength {
                expected: n,
                found: self.n_qubits,
            });
        }
        let terms = self.terms.iter().map(|t| {
            let mut letters = t.word.letters.clone();
            letters.resize(n, Pauli::I);
            (t.coeff, PauliWord::new(letters, Phase::PlusOne))
        });
        Self::new(n, terms)
    }

    /// Places the letters of this sum on `slots` of an `n`-qubit word.
    pub fn lifted(&self, n: usize, slots: &[usize]) -> Result<Self> {
        if slots.len() != self.n_qubits {
            return Err(Error::WordLength {
                expected: self.n_qubits,
                found: slots.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut letters = vec![Pauli::I; n];
                for (&slot, &p) in slots.iter().zip(&t.word.letters) {
                    if slot >= n {
                        return Err(Error::TargetOutOfRange { target: slot, len: n });
                    }
                    letters[slot] = p;
                }
                Ok((t.coeff, PauliWord::new(letters, Phase::PlusOne)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, terms)
    }

    /// Dense `2^n x 2^n` matrix of the sum.
    pub fn materialize(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(1 << self.n_qubits);
        for t in &self.terms {
            t.word.accumulate_into(t.coeff, &mut m);
        }
        m
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            // zero operator: keep the qubit count visible
            return write!(f, "0+0i*{}", PauliWord::identity(self.n_qubits));
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}*{}", format_complex(t.coeff), t.word)?;
        }
        Ok(())
    }
}

impl FromStr for PauliSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for entry in s.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let (coeff, word) = match entry.split_once('*') {
                Some((c, w)) => (parse_complex(c)?, w.parse::<PauliWord>()?),
                None => (ONE, entry.parse::<PauliWord>()?),
            };
            terms.push((coeff, word));
        }
        let n = terms
            .first()
            .map(|(_, w)| w.len())
            .ok_or_else(|| Error::Parse("empty Pauli sum".into()))?;
        Self::new(n, terms)
    }
}

impl TryFrom<String> for PauliSum {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PauliSum> for String {
    fn from(p: PauliSum) -> Self {
        p.to_string()
    }
}

/// Formats `a+bi` using shortest round-trip decimal forms.
pub fn format_complex(c: C64) -> String {
    let sign = if c.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", c.re, sign, c.im.abs())
}

/// Parses `a+bi`, `a`, `bi`, `i`, `-i` (exponents allowed).
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.trim().replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid complex number `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re_part.parse::<f64>().map_err(|_| bad())?;
    let z = C64::new(re, im);
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(bad());
    }
    Ok(z)
}

/// Expansion `a = Σ c_w w` with `c_w = Tr(w† a) / 2^n`.
///
/// For each X-mask the coefficients over Z-masks are a Walsh–Hadamard
/// transform of the entries `a[r, r ^ x]`, so the whole decomposition costs
/// `O(n 4^n)`.
pub fn pauli_decompose(a: &ComplexMatrix, n_qubits: usize) -> Result<PauliSum> {
    let dim = a.dim();
    if !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    if n_qubits >= usize::BITS as usize || dim != 1 << n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1usize.checked_shl(n_qubits as u32).unwrap_or(0),
            found: dim,
        });
    }
    let scale = 1.0 / dim as f64;
    let mut terms = Vec::new();
    let mut v = vec![ZERO; dim];
    for xm in 0..dim {
        for (r, slot) in v.iter_mut().enumerate() {
            *slot = a.get(r, r ^ xm);
        }
        walsh_hadamard(&mut v);
        for (zm, &s) in v.iter().enumerate() {
            if s == ZERO {
                continue;
            }
            let letters: Vec<Pauli> = (0..n_qubits)
                .map(|q| {
                    let bit = 1 << (n_qubits - 1 - q);
                    Pauli::from_bits(xm & bit != 0, zm & bit != 0)
                })
                .collect();
            let ny = (xm & zm).count_ones();
            terms.push((s * I.powu(ny) * scale, PauliWord::new(letters, Phase::PlusOne)));
        }
    }
    PauliSum::new(n_qubits, terms)
}

/// Decomposition with the qubit count inferred from the dimension.
pub fn pauli_decompose_auto(a: &ComplexMatrix) -> Result<PauliSum> {
    let dim = a.dim();
    if !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    pauli_decompose(a, dim.trailing_zeros() as usize)
}

fn walsh_hadamard(v: &mut [C64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for j in start..start + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}
