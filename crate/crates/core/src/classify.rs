//! Register subsets and the parity-based informativeness decision procedure.
//!
//! Membership is tracked per signal/noise pair, so every rule below is a
//! function of the tag counts and the clone count alone.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::branch::AlignedShape;
use crate::pauli::{Pauli, PauliString};
use crate::tol;
use crate::{Error, Result};

/// Which qubits of pair `i` (signal `S_i`, noise `N_i`) a subset contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairTag {
    Absent,
    Signal,
    Noise,
    Both,
}

impl PairTag {
    pub const ALL: [PairTag; 4] = [PairTag::Absent, PairTag::Signal, PairTag::Noise, PairTag::Both];

    pub fn as_str(self) -> &'static str {
        match self {
            PairTag::Absent => "NONE",
            PairTag::Signal => "SIGNAL",
            PairTag::Noise => "NOISE",
            PairTag::Both => "BOTH",
        }
    }

    pub fn has_signal(self) -> bool {
        matches!(self, PairTag::Signal | PairTag::Both)
    }

    pub fn has_noise(self) -> bool {
        matches!(self, PairTag::Noise | PairTag::Both)
    }
}

/// A subset `B` of the storage register `{S1, N1, …, Sn, Nn}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegisterSubset {
    tags: Vec<PairTag>,
}

impl RegisterSubset {
    /// One tag per pair; `n = tags.len()` must be at least 1.
    pub fn new(tags: Vec<PairTag>) -> Result<Self> {
        if tags.is_empty() {
            return Err(Error::ZeroClones);
        }
        Ok(RegisterSubset { tags })
    }

    /// `B_{n,p} = {S1, …, Sp, N(p+1), …, Nn}`.
    pub fn aligned(n: usize, p: usize) -> Result<Self> {
        if p > n {
            return Err(Error::SignalCountAboveClones { p, n });
        }
        let tags = (0..n)
            .map(|i| if i < p { PairTag::Signal } else { PairTag::Noise })
            .collect();
        Self::new(tags)
    }

    /// Decodes pattern `index` in `0..4^n`; the tag of pair `i` is base-4
    /// digit `i` (least significant first), with digits `NONE, SIGNAL,
    /// NOISE, BOTH`.
    pub fn from_pattern_index(n: usize, index: u64) -> Result<Self> {
        let mut rest = index;
        let tags = (0..n)
            .map(|_| {
                let t = PairTag::ALL[(rest % 4) as usize];
                rest /= 4;
                t
            })
            .collect();
        Self::new(tags)
    }

    pub fn pattern_index(&self) -> u64 {
        self.tags
            .iter()
            .rev()
            .fold(0, |acc, t| acc * 4 + *t as u64)
    }

    pub fn n(&self) -> usize {
        self.tags.len()
    }

    pub fn tags(&self) -> &[PairTag] {
        &self.tags
    }

    fn count(&self, tag: PairTag) -> usize {
        self.tags.iter().filter(|t| **t == tag).count()
    }

    pub fn both_count(&self) -> usize {
        self.count(PairTag::Both)
    }

    pub fn missing_pairs(&self) -> usize {
        self.count(PairTag::Absent)
    }

    /// `p`: number of signal qubits in the subset.
    pub fn signal_count(&self) -> usize {
        self.tags.iter().filter(|t| t.has_signal()).count()
    }

    /// Number of noise qubits in the subset.
    pub fn noise_count(&self) -> usize {
        self.tags.iter().filter(|t| t.has_noise()).count()
    }

    /// `|B|`.
    pub fn size(&self) -> usize {
        self.signal_count() + self.noise_count()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Comma-separated labels such as `S1,N1,N3`.
    pub fn labels(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tags.iter().enumerate() {
            let idx = i + 1;
            let mut push = |kind: char| {
                if !out.is_empty() {
                    out.push(',');
                }
                out.push(kind);
                out.push_str(&alloc::format!("{idx}"));
            };
            if t.has_signal() {
                push('S');
            }
            if t.has_noise() {
                push('N');
            }
        }
        out
    }

    /// Same subset with pair tags reordered by `perm[i]` -> new position `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        RegisterSubset {
            tags: perm.iter().map(|&i| self.tags[i]).collect(),
        }
    }
}

impl fmt::Display for RegisterSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels())
    }
}

/// Result of [`canonical_shape`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeClass {
    /// Exactly one qubit from every pair.
    Aligned(AlignedShape),
    /// At least one pair contributes nothing.
    MissingPair,
    /// Every pair is represented and some pair is complete.
    Oversized,
}

pub fn canonical_shape(b: &RegisterSubset) -> ShapeClass {
    if b.missing_pairs() > 0 {
        ShapeClass::MissingPair
    } else if b.both_count() > 0 {
        ShapeClass::Oversized
    } else {
        let p = b.signal_count();
        ShapeClass::Aligned(
            AlignedShape::new(b.n(), p, b.n() - p).expect("counts of a well-formed subset"),
        )
    }
}

/// One complete pair plus at least one qubit from every other pair.
pub fn is_authorized(b: &RegisterSubset) -> bool {
    b.both_count() >= 1 && b.missing_pairs() == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Authorized,
    CompletelyUninformative,
    PartiallyInformative,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Authorized => "AUTHORIZED",
            Verdict::CompletelyUninformative => "COMPLETELY_UNINFORMATIVE",
            Verdict::PartiallyInformative => "PARTIALLY_INFORMATIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The rule that decided a [`Verdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTag {
    Auth1,
    MissingPair,
    ParityEvenN,
    ParityEvenP,
    ParityOddOdd,
}

impl RuleTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleTag::Auth1 => "AUTH1",
            RuleTag::MissingPair => "PROP1_MISSING_PAIR",
            RuleTag::ParityEvenN => "PARITY_EVEN_N",
            RuleTag::ParityEvenP => "PARITY_EVEN_P",
            RuleTag::ParityOddOdd => "PARITY_ODD_ODD",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sign `s` in `ρ = (I⊗n + s·y·Y⊗n) / 2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeakSign {
    Plus,
    Minus,
}

impl LeakSign {
    pub fn from_value(v: f64) -> Self {
        if v >= 0.0 {
            LeakSign::Plus
        } else {
            LeakSign::Minus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            LeakSign::Plus => 1.0,
            LeakSign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            LeakSign::Plus => 1,
            LeakSign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            LeakSign::Plus => LeakSign::Minus,
            LeakSign::Minus => LeakSign::Plus,
        }
    }
}

/// Where a leak sign came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignSource {
    /// Statevector partial trace at `y = +1`.
    Oracle,
    /// Exact 𝒯-sum of the branch tables.
    TableCalculus,
}

impl SignSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SignSource::Oracle => "oracle",
            SignSource::TableCalculus => "table-calculus",
        }
    }
}

/// Resolved leak signs per odd clone count.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SignTable {
    entries: BTreeMap<usize, (LeakSign, SignSource)>,
}

impl SignTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, n: usize, sign: LeakSign, source: SignSource) {
        self.entries.insert(n, (sign, source));
    }

    pub fn get(&self, n: usize) -> Option<(LeakSign, SignSource)> {
        self.entries.get(&n).copied()
    }

    pub fn sign(&self, n: usize) -> Result<LeakSign> {
        self.get(n).map(|(s, _)| s).ok_or(Error::SignUnresolved { n })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, LeakSign, SignSource)> + '_ {
        self.entries.iter().map(|(n, (s, src))| (*n, *s, *src))
    }
}

/// Observable and sign of a partially informative subset.
#[derive(Clone, Debug, PartialEq)]
pub struct LeakDescriptor {
    pub sign: LeakSign,
    pub observable: PauliString,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: RuleTag,
    /// Present exactly when the verdict is partially informative.
    pub leak: Option<LeakDescriptor>,
}

impl Classification {
    fn plain(verdict: Verdict, reason: RuleTag) -> Self {
        Classification {
            verdict,
            reason,
            leak: None,
        }
    }
}

/// Decision procedure for a nonempty subset. `signs` supplies the leak sign
/// for odd `n`; it is only consulted for partially informative subsets.
pub fn classify(b: &RegisterSubset, signs: &SignTable) -> Result<Classification> {
    if b.is_empty() {
        return Err(Error::EmptySubset);
    }
    if is_authorized(b) {
        return Ok(Classification::plain(Verdict::Authorized, RuleTag::Auth1));
    }
    if b.missing_pairs() > 0 {
        return Ok(Classification::plain(
            Verdict::CompletelyUninformative,
            RuleTag::MissingPair,
        ));
    }
    let n = b.n();
    if n.is_multiple_of(2) {
        return Ok(Classification::plain(
            Verdict::CompletelyUninformative,
            RuleTag::ParityEvenN,
        ));
    }
    if b.signal_count().is_multiple_of(2) {
        return Ok(Classification::plain(
            Verdict::CompletelyUninformative,
            RuleTag::ParityEvenP,
        ));
    }
    Ok(Classification {
        verdict: Verdict::PartiallyInformative,
        reason: RuleTag::ParityOddOdd,
        leak: Some(LeakDescriptor {
            sign: signs.sign(n)?,
            observable: PauliString::uniform(Pauli::Y, n),
        }),
    })
}

/// Every nonempty membership pattern for `n` pairs, in pattern-index order.
pub fn enumerate_classifications(
    n: usize,
    signs: &SignTable,
) -> Result<Vec<(RegisterSubset, Classification)>> {
    if n == 0 {
        return Err(Error::ZeroClones);
    }
    if n > tol::ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard {
            n,
            max: tol::ENUMERATION_GUARD,
        });
    }
    let total = 4u64.pow(n as u32);
    (1..total)
        .map(|idx| {
            let b = RegisterSubset::from_pattern_index(n, idx)?;
            let c = classify(&b, signs)?;
            Ok((b, c))
        })
        .collect()
}

/// Verdict counts in the order authorized, uninformative, partial.
pub fn verdict_counts(rows: &[(RegisterSubset, Classification)]) -> [usize; 3] {
    let mut counts = [0; 3];
    for (_, c) in rows {
        counts[c.verdict as usize] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;
    use PairTag::*;

    fn subset(tags: &[PairTag]) -> RegisterSubset {
        RegisterSubset::new(tags.to_vec()).unwrap()
    }

    fn signs() -> SignTable {
        let mut t = SignTable::new();
        for n in (1..=11).step_by(2) {
            t.insert(n, LeakSign::Plus, SignSource::TableCalculus);
        }
        t
    }

    /// Nested decision tree written straight from the size-based statement
    /// of the classification (missing pair / size > n / size = n parity).
    fn decision_tree(b: &RegisterSubset) -> Verdict {
        let n = b.n();
        if b.missing_pairs() > 0 || b.size() < n {
            return Verdict::CompletelyUninformative;
        }
        if b.size() > n {
            return Verdict::Authorized;
        }
        if n.is_multiple_of(2) || b.signal_count().is_multiple_of(2) {
            Verdict::CompletelyUninformative
        } else {
            Verdict::PartiallyInformative
        }
    }

    #[test]
    fn authorization_examples() {
        assert!(is_authorized(&subset(&[Both, Signal, Signal, Noise])));
        assert!(!is_authorized(&subset(&[Noise, Noise, Noise])));
        assert!(!is_authorized(&subset(&[Both, Absent])));
    }

    #[test]
    fn classification_examples() {
        let t = signs();
        let c = classify(&subset(&[Signal, Signal]), &t).unwrap();
        assert_eq!((c.verdict, c.reason), (Verdict::CompletelyUninformative, RuleTag::ParityEvenN));

        let c = classify(&subset(&[Signal, Signal, Signal, Noise, Noise]), &t).unwrap();
        assert_eq!(c.verdict, Verdict::PartiallyInformative);
        let leak = c.leak.unwrap();
        assert_eq!(leak.observable, PauliString::uniform(Pauli::Y, 5));

        let c = classify(&subset(&[Both, Absent]), &t).unwrap();
        assert_eq!((c.verdict, c.reason), (Verdict::CompletelyUninformative, RuleTag::MissingPair));

        let c = classify(&subset(&[Signal, Signal, Noise]), &t).unwrap();
        assert_eq!(c.reason, RuleTag::ParityEvenP);

        assert_eq!(classify(&subset(&[Absent, Absent]), &t), Err(Error::EmptySubset));
        assert_eq!(
            classify(&subset(&[Signal]), &SignTable::new()),
            Err(Error::SignUnresolved { n: 1 })
        );
    }

    #[test]
    fn shape_examples() {
        assert_eq!(
            canonical_shape(&subset(&[Noise, Signal, Noise])),
            ShapeClass::Aligned(AlignedShape::new(3, 1, 2).unwrap())
        );
        assert_eq!(canonical_shape(&subset(&[Both, Signal])), ShapeClass::Oversized);
        assert_eq!(canonical_shape(&subset(&[Absent, Noise])), ShapeClass::MissingPair);
    }

    #[test]
    fn enumeration_n1_matches_worked_case() {
        let rows = enumerate_classifications(1, &signs()).unwrap();
        assert_eq!(rows.len(), 3);
        for (b, c) in &rows {
            let expected = match b.labels().as_str() {
                "S1,N1" => Verdict::Authorized,
                "S1" => Verdict::PartiallyInformative,
                "N1" => Verdict::CompletelyUninformative,
                other => panic!("unexpected pattern {other}"),
            };
            assert_eq!(c.verdict, expected);
        }
    }

    #[test]
    fn enumeration_n2_has_no_leaks() {
        let rows = enumerate_classifications(2, &signs()).unwrap();
        assert_eq!(rows.len(), 15);
        for (b, c) in &rows {
            if b.size() <= 2 {
                assert_eq!(c.verdict, Verdict::CompletelyUninformative, "{b}");
            }
            assert_eq!(c.verdict == Verdict::Authorized, b.both_count() >= 1 && b.missing_pairs() == 0);
        }
        assert_eq!(rows.iter().filter(|(b, _)| b.size() <= 2).count(), 10);
    }

    #[test]
    fn enumeration_n3_partial_count() {
        let rows = enumerate_classifications(3, &signs()).unwrap();
        // brute count of aligned patterns with odd p
        let mut expected = 0;
        for idx in 1..64u64 {
            let b = RegisterSubset::from_pattern_index(3, idx).unwrap();
            if b.tags().iter().all(|t| matches!(t, Signal | Noise)) && b.signal_count() % 2 == 1 {
                expected += 1;
            }
        }
        assert_eq!(expected, 4);
        assert_eq!(verdict_counts(&rows)[Verdict::PartiallyInformative as usize], 4);
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(
            enumerate_classifications(11, &signs()),
            Err(Error::EnumerationGuard { n: 11, .. })
        ));
    }

    #[test]
    fn exhaustive_agreement_with_decision_tree() {
        let t = signs();
        for n in 1..=6 {
            for (b, c) in enumerate_classifications(n, &t).unwrap() {
                assert_eq!(c.verdict, decision_tree(&b), "{b}");
                assert_eq!(c.leak.is_some(), c.verdict == Verdict::PartiallyInformative);
                if b.size() < n {
                    assert!(b.missing_pairs() >= 1);
                }
            }
        }
    }

    #[test]
    fn labels_and_pattern_index_round_trip() {
        let b = subset(&[Both, Absent, Noise]);
        assert_eq!(b.labels(), "S1,N1,N3");
        assert_eq!(RegisterSubset::from_pattern_index(3, b.pattern_index()).unwrap(), b);
        assert_eq!(RegisterSubset::aligned(3, 1).unwrap().tags(), &vec![Signal, Noise, Noise][..]);
    }

    fn subset_strategy() -> impl Strategy<Value = (RegisterSubset, Vec<usize>)> {
        (1usize..7).prop_flat_map(|n| {
            (
                proptest::collection::vec(0usize..4, n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(|(raw, perm)| {
                    let tags = raw.into_iter().map(|i| PairTag::ALL[i]).collect();
                    (RegisterSubset::new(tags).unwrap(), perm)
                })
        })
    }

    proptest! {
        #[test]
        fn verdict_is_permutation_invariant((b, perm) in subset_strategy()) {
            prop_assume!(!b.is_empty());
            let t = signs();
            let a = classify(&b, &t).unwrap();
            let c = classify(&b.permuted(&perm), &t).unwrap();
            prop_assert_eq!(a.verdict, c.verdict);
            prop_assert_eq!(a.reason, c.reason);
        }
    }
}
