//! Pauli strings in symplectic bit form.
//!
//! A string on `n` qubits is stored as two bit masks (`x`, `z`) plus a global
//! factor `i^phase`. Site `j` is bit `j` of both masks and decodes as
//! `(0,0)=I`, `(1,0)=X`, `(1,1)=Y`, `(0,1)=Z`. Qubit 0 is the leftmost letter
//! of the textual form.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Width of the bit masks; no string can be longer than this.
pub const HARD_MAX_QUBITS: usize = 64;

/// Qubit cap applied when nothing else is configured.
pub const DEFAULT_MAX_QUBITS: usize = 16;

static MAX_QUBITS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_QUBITS);

/// Current process-wide qubit cap.
pub fn max_qubits() -> usize {
    MAX_QUBITS.load(Ordering::Relaxed)
}

/// Override the qubit cap. Values are clamped to `1..=HARD_MAX_QUBITS`.
pub fn set_max_qubits(cap: usize) {
    MAX_QUBITS.store(cap.clamp(1, HARD_MAX_QUBITS), Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid letter {letter:?} at position {position}")]
    InvalidLetter { letter: char, position: usize },
    #[error("{n} qubits exceeds the cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },
    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },
    #[error("site {site} out of range for {n} qubits")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("rotation generator must be Hermitian (phase +1 or -1)")]
    NonHermitianRotation,
}

/// Single-site Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Pair of letters exchanged by [`PauliString::swap_letters`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LetterSwap {
    XY,
    YZ,
    XZ,
}

/// An `n`-qubit Pauli operator `i^phase · P_1 ⊗ … ⊗ P_n`.
///
/// Derived equality and hashing are exact (phase included); use
/// [`PauliString::canonical_eq`] or [`PauliString::canonical`] for the
/// phase-free comparison used by everything at the Lie-algebra level.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u8,
    phase: u8,
    x: u64,
    z: u64,
}

#[inline]
fn site_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_n(n: usize) -> Result<(), PauliError> {
    if n == 0 {
        return Err(PauliError::Empty);
    }
    let cap = max_qubits();
    if n > cap {
        return Err(PauliError::TooManyQubits { n, cap });
    }
    Ok(())
}

impl PauliString {
    /// The identity string `I^{⊗n}`.
    pub fn identity(n: usize) -> Result<Self, PauliError> {
        check_n(n)?;
        Ok(PauliString { n: n as u8, phase: 0, x: 0, z: 0 })
    }

    /// Build from raw masks. Bits at or above `n` are rejected.
    pub fn from_bits(n: usize, x: u64, z: u64, phase: u8) -> Result<Self, PauliError> {
        check_n(n)?;
        let mask = site_mask(n);
        if (x | z) & !mask != 0 {
            let site = 63 - ((x | z) & !mask).leading_zeros() as usize;
            return Err(PauliError::SiteOutOfRange { site, n });
        }
        Ok(PauliString { n: n as u8, phase: phase & 3, x, z })
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self, PauliError> {
        check_n(letters.len())?;
        let mut x = 0u64;
        let mut z = 0u64;
        for (j, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u64) << j;
            z |= (bz as u64) << j;
        }
        Ok(PauliString { n: letters.len() as u8, phase: 0, x, z })
    }

    /// A string that is the identity except at the listed sites.
    pub fn from_sites(n: usize, sites: &[(usize, Letter)]) -> Result<Self, PauliError> {
        let mut p = PauliString::identity(n)?;
        for &(site, letter) in sites {
            if site >= n {
                return Err(PauliError::SiteOutOfRange { site, n });
            }
            p.set_letter(site, letter);
        }
        Ok(p)
    }

    /// Parse `"XIYZ"` with an optional `+`, `-`, `i`, `+i` or `-i` prefix.
    pub fn parse(text: &str) -> Result<Self, PauliError> {
        let text = text.trim();
        let (phase, body) = if let Some(rest) = text.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = text.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = text.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = text.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = text.strip_prefix('+') {
            (0, rest)
        } else {
            (0, text)
        };
        let offset = text.len() - body.len();
        let mut letters = Vec::with_capacity(body.len());
        for (pos, c) in body.chars().enumerate() {
            match Letter::from_char(c) {
                Some(l) => letters.push(l),
                None => return Err(PauliError::InvalidLetter { letter: c, position: pos + offset }),
            }
        }
        let mut p = PauliString::from_letters(&letters)?;
        p.phase = phase;
        Ok(p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn x_bits(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_bits(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn letter(&self, site: usize) -> Letter {
        Letter::from_bits(self.x >> site & 1 == 1, self.z >> site & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n()).map(|j| self.letter(j)).collect()
    }

    fn set_letter(&mut self, site: usize, letter: Letter) {
        let (bx, bz) = letter.bits();
        let bit = 1u64 << site;
        self.x = (self.x & !bit) | ((bx as u64) << site);
        self.z = (self.z & !bit) | ((bz as u64) << site);
    }

    /// Same string with the phase multiplied by `i^k`.
    pub fn times_i_pow(mut self, k: u8) -> Self {
        self.phase = (self.phase + k) & 3;
        self
    }

    /// Phase-free representative.
    #[inline]
    pub fn canonical(mut self) -> Self {
        self.phase = 0;
        self
    }

    #[inline]
    pub fn canonical_eq(&self, other: &PauliString) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Bit mask of non-identity sites.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    fn check_len(&self, other: &PauliString) -> Result<(), PauliError> {
        if self.n != other.n {
            Err(PauliError::LengthMismatch { left: self.n(), right: other.n() })
        } else {
            Ok(())
        }
    }

    /// Exact product `self · other`, phase included.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_len(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &PauliString) -> PauliString {
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let xo1 = x1 & !z1;
        let y1 = x1 & z1;
        let zo1 = !x1 & z1;
        let xo2 = x2 & !z2;
        let y2 = x2 & z2;
        let zo2 = !x2 & z2;
        // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
        let plus = (xo1 & y2) | (y1 & zo2) | (zo1 & xo2);
        let minus = (y1 & xo2) | (zo1 & y2) | (xo1 & zo2);
        let site_phase = (plus.count_ones() + 3 * minus.count_ones()) as u8;
        PauliString {
            n: self.n,
            phase: (self.phase + other.phase + site_phase) & 3,
            x: x1 ^ x2,
            z: z1 ^ z2,
        }
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1 == 1
    }

    /// True iff the symplectic inner product vanishes.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        self.check_len(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    /// The phase-free string of `[self, other]`, or `None` when they commute.
    pub fn commutator(&self, other: &PauliString) -> Result<Option<PauliString>, PauliError> {
        self.check_len(other)?;
        if self.anticommutes_unchecked(other) {
            Ok(Some(PauliString { n: self.n, phase: 0, x: self.x ^ other.x, z: self.z ^ other.z }))
        } else {
            Ok(None)
        }
    }

    /// `(-1)^{#Y}`: the sign with `Pᵀ = sign · P`.
    pub fn transpose_sign(&self) -> i8 {
        if (self.x & self.z).count_ones() & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// Exact transpose (the phase factor is not conjugated).
    pub fn transpose(&self) -> PauliString {
        let flip = if self.transpose_sign() < 0 { 2 } else { 0 };
        self.times_i_pow(flip)
    }

    fn check_hermitian(&self) -> Result<(), PauliError> {
        if self.phase & 1 == 1 {
            Err(PauliError::NonHermitianRotation)
        } else {
            Ok(())
        }
    }

    /// `e^{iπ/4·a} b e^{-iπ/4·a}` with `a = self`, `b = other`.
    pub fn quarter_conjugate(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        self.check_len(other)?;
        self.check_hermitian()?;
        if self.anticommutes_unchecked(other) {
            Ok(self.mul_unchecked(other).times_i_pow(1))
        } else {
            Ok(*other)
        }
    }

    /// `R q Rᵀ` with `R = e^{iπ/4·a}`, `a = self`.
    ///
    /// `Rᵀ = e^{iπ/4·s·a}` with `s` the transpose sign of `a`. For `s = -1`
    /// this is plain conjugation; for `s = +1` the two rotations add on
    /// commuting input and cancel on anticommuting input.
    pub fn quarter_congruence(&self, q: &PauliString) -> Result<PauliString, PauliError> {
        self.check_len(q)?;
        self.check_hermitian()?;
        let anti = self.anticommutes_unchecked(q);
        let rotate = if self.transpose_sign() < 0 { anti } else { !anti };
        if rotate {
            Ok(self.mul_unchecked(q).times_i_pow(1))
        } else {
            Ok(*q)
        }
    }

    /// Exchange two letters on the sites selected by `mask`.
    pub fn swap_letters(&self, mask: u64, swap: LetterSwap) -> PauliString {
        let mask = mask & site_mask(self.n());
        let (mut x, mut z) = (self.x, self.z);
        match swap {
            // X(1,0) <-> Y(1,1): flip z where x is set.
            LetterSwap::XY => z ^= x & mask,
            // Y(1,1) <-> Z(0,1): flip x where z is set.
            LetterSwap::YZ => x ^= z & mask,
            LetterSwap::XZ => {
                let (xm, zm) = (x & mask, z & mask);
                x = (x & !mask) | zm;
                z = (z & !mask) | xm;
            }
        }
        PauliString { n: self.n, phase: self.phase, x, z }
    }

    /// Move the letter on site `j` to site `perm[j]`.
    pub fn permute_sites(&self, perm: &[usize]) -> Result<PauliString, PauliError> {
        if perm.len() != self.n() {
            return Err(PauliError::LengthMismatch { left: self.n(), right: perm.len() });
        }
        let mut out = PauliString { n: self.n, phase: self.phase, x: 0, z: 0 };
        for (j, &target) in perm.iter().enumerate() {
            if target >= self.n() {
                return Err(PauliError::SiteOutOfRange { site: target, n: self.n() });
            }
            out.x |= (self.x >> j & 1) << target;
            out.z |= (self.z >> j & 1) << target;
        }
        Ok(out)
    }

    /// The letters only, without any phase prefix.
    pub fn letter_string(&self) -> String {
        (0..self.n()).map(|j| self.letter(j).as_char()).collect()
    }

    /// Packed `(x, z)` key; equal for canonically equal strings of one length.
    #[inline]
    pub fn key(&self) -> (u64, u64) {
        (self.x, self.z)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letter_string())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PauliString::parse(s)
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| {
                (0..self.n())
                    .map(|j| self.letter(j).cmp(&other.letter(j)))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        PauliString::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        PauliString::parse(s).unwrap()
    }

    #[test]
    fn parse_decodes_letters() {
        let xx = p("XX");
        assert_eq!(xx.n(), 2);
        assert_eq!(xx.letters(), vec![Letter::X, Letter::X]);
        assert_eq!(xx.phase_exp(), 0);

        let z3 = p("IIZ");
        assert_eq!(z3, PauliString::from_sites(3, &[(2, Letter::Z)]).unwrap());

        let q = p("YYX");
        assert_eq!(q.letters(), vec![Letter::Y, Letter::Y, Letter::X]);
    }

    #[test]
    fn parse_prefixes() {
        assert_eq!(p("-iXZ").phase_exp(), 3);
        assert_eq!(p("iXZ").phase_exp(), 1);
        assert_eq!(p("+iXZ").phase_exp(), 1);
        assert_eq!(p("-XZ").phase_exp(), 2);
        assert_eq!(p("+XZ").phase_exp(), 0);
        for s in ["XZ", "iXZ", "-XZ", "-iXZ"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(PauliString::parse(""), Err(PauliError::Empty));
        assert_eq!(
            PauliString::parse("XAZ"),
            Err(PauliError::InvalidLetter { letter: 'A', position: 1 })
        );
        assert!(matches!(PauliString::parse("xx"), Err(PauliError::InvalidLetter { .. })));
        let long = "X".repeat(HARD_MAX_QUBITS + 1);
        assert!(matches!(PauliString::parse(&long), Err(PauliError::TooManyQubits { .. })));
    }

    #[test]
    fn single_site_table() {
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("iZ"));
        assert_eq!(p("Y").multiply(&p("X")).unwrap(), p("-iZ"));
        assert_eq!(p("Y").multiply(&p("Z")).unwrap(), p("iX"));
        assert_eq!(p("Z").multiply(&p("Y")).unwrap(), p("-iX"));
        assert_eq!(p("Z").multiply(&p("X")).unwrap(), p("iY"));
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("-iY"));
        for l in ["I", "X", "Y", "Z"] {
            assert_eq!(p(l).multiply(&p(l)).unwrap(), p("I"));
        }
    }

    #[test]
    fn two_site_product_phase() {
        // (iZ) ⊗ (-iZ) = ZZ
        assert_eq!(p("XY").multiply(&p("YX")).unwrap(), p("ZZ"));
    }

    #[test]
    fn commutation_examples() {
        assert!(p("XX").commutes(&p("YY")).unwrap());
        assert!(!p("XX").commutes(&p("XY")).unwrap());
        assert!(p("XYZ").commutes(&p("III")).unwrap());
        assert_eq!(
            p("XX").commutes(&p("X")),
            Err(PauliError::LengthMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(p("XX").commutator(&p("XY")).unwrap(), Some(p("IZ")));
        assert_eq!(p("XX").commutator(&p("YY")).unwrap(), None);
        let a = p("XYZZ");
        assert_eq!(a.commutator(&a).unwrap(), None);
        // commutator output is phase free even for phased input
        assert_eq!(p("-iX").commutator(&p("Z")).unwrap(), Some(p("Y")));
    }

    #[test]
    fn transpose_sign_examples() {
        assert_eq!(p("XYZY").transpose_sign(), 1);
        assert_eq!(p("Y").transpose_sign(), -1);
        assert_eq!(p("IIII").transpose_sign(), 1);
        assert_eq!(p("iY").transpose(), p("-iY"));
    }

    #[test]
    fn quarter_conjugate_examples() {
        assert_eq!(p("X").quarter_conjugate(&p("Z")).unwrap(), p("Y"));
        assert_eq!(p("X").quarter_conjugate(&p("X")).unwrap(), p("X"));
        for (l, m) in [(1usize, 1usize), (2, 2), (3, 1), (2, 4)] {
            let n = l + m;
            let a = p(&format!("X{}", "Z".repeat(n - 1)));
            let q = p(&format!("{}{}", "Y".repeat(l), "X".repeat(m)));
            assert_eq!(a.quarter_conjugate(&q).unwrap(), q);
        }
        let a = p("XZZ");
        assert_ne!(a.quarter_conjugate(&p("YYX")).unwrap(), p("YYX"));
        assert_eq!(p("iX").quarter_conjugate(&p("Z")), Err(PauliError::NonHermitianRotation));
    }

    #[test]
    fn quarter_congruence_commuting_odd_transpose() {
        // a = Y has transpose sign -1; commuting q comes back untouched
        let a = p("YI");
        let q = p("YZ");
        assert_eq!(a.quarter_congruence(&q).unwrap(), q);
        // a = X, symmetric; anticommuting q is unchanged, commuting q rotates
        assert_eq!(p("X").quarter_congruence(&p("Z")).unwrap(), p("Z"));
        assert_eq!(p("X").quarter_congruence(&p("X")).unwrap(), p("iI"));
    }

    #[test]
    fn swap_letters_on_mask() {
        assert_eq!(p("XYZI").swap_letters(0b1111, LetterSwap::XY), p("YXZI"));
        assert_eq!(p("XYZI").swap_letters(0b0110, LetterSwap::YZ), p("XZYI"));
        assert_eq!(p("XYZI").swap_letters(0b0101, LetterSwap::XZ), p("ZYXI"));
    }

    #[test]
    fn permute_moves_letters() {
        let q = p("XYZ").permute_sites(&[2, 0, 1]).unwrap();
        assert_eq!(q, p("YZX"));
    }

    #[test]
    fn cap_can_be_raised() {
        // Run both parts in one test to avoid racing other tests on the global.
        let long = "Z".repeat(20);
        assert!(PauliString::parse(&long).is_err());
        set_max_qubits(24);
        assert_eq!(PauliString::parse(&long).unwrap().n(), 20);
        set_max_qubits(DEFAULT_MAX_QUBITS);
    }
}
