//! Parsing of subset labels and Bloch triples.

use cloneleak_core::{BlochVector, PairTag, RegisterSubset};

use crate::CliError;

/// Largest deviation from unit norm that is silently normalized away.
pub const PSI_NORM_SLACK: f64 = 1e-6;

/// Parses `"S1,N2,N3"` into per-pair membership for `n` pairs.
pub fn parse_subset(text: &str, n: usize) -> Result<RegisterSubset, CliError> {
    if n == 0 {
        return Err(CliError::Core(cloneleak_core::Error::ZeroClones));
    }
    let mut tags = vec![PairTag::Absent; n];
    let mut seen = 0usize;
    for raw in text.split(',') {
        let token = raw.trim();
        if token.is_empty() {
            continue;
        }
        let (signal, rest) = match token.as_bytes()[0].to_ascii_uppercase() {
            b'S' => (true, &token[1..]),
            b'N' => (false, &token[1..]),
            _ => return Err(CliError::UnknownToken(token.to_string())),
        };
        let index: usize = rest
            .parse()
            .map_err(|_| CliError::UnknownToken(token.to_string()))?;
        if index == 0 || index > n {
            return Err(CliError::IndexOutOfRange {
                label: token.to_string(),
                n,
            });
        }
        let tag = &mut tags[index - 1];
        let already = if signal { tag.has_signal() } else { tag.has_noise() };
        if already {
            return Err(CliError::DuplicateLabel(token.to_string()));
        }
        *tag = match (*tag, signal) {
            (PairTag::Absent, true) => PairTag::Signal,
            (PairTag::Absent, false) => PairTag::Noise,
            _ => PairTag::Both,
        };
        seen += 1;
    }
    if seen == 0 {
        return Err(CliError::EmptySubset);
    }
    Ok(RegisterSubset::new(tags)?)
}

/// Parses `"x,y,z"`. Inputs within [`PSI_NORM_SLACK`] of the unit sphere are
/// rescaled onto it; anything else is rejected.
pub fn parse_psi(text: &str) -> Result<BlochVector, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::PsiFormat(text.to_string()))?;
    let [x, y, z] = parts[..] else {
        return Err(CliError::PsiFormat(text.to_string()));
    };
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(CliError::PsiFormat(text.to_string()));
    }
    let norm = (x * x + y * y + z * z).sqrt();
    if (norm - 1.0).abs() > PSI_NORM_SLACK {
        return Err(CliError::PsiNotPure { norm });
    }
    Ok(BlochVector::new(x / norm, y / norm, z / norm)?)
}
