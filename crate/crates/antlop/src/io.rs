//! Instance file parsing, writing and random generation.
//!
//! The on-disk format is the dense text layout used by the LOLIB/MBLIB
//! collections: an optional single name line, the instance size `n`, then at
//! least `n * n` whitespace-separated numeric tokens in row-major order. Any
//! mix of spaces, tabs and newlines separates tokens. Files circulate both
//! with and without the leading name line, so a first line that does not
//! start with a number is treated as the instance name.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LopError, Result};
use crate::problem::Instance;

/// `(line, column, token)` with 1-based positions.
fn tokenize(text: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut start = None;
        for (i, c) in line.char_indices() {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push((ln + 1, s + 1, &line[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push((ln + 1, s + 1, &line[s..]));
        }
    }
    out
}

/// Parses an instance from text. `fallback_name` (usually the file stem)
/// names the instance when the file itself carries no name line; a file
/// whose first line is non-numeric names itself.
///
/// Tokens beyond the `n * n` expected entries are ignored with a warning.
pub fn parse_instance(text: &str, fallback_name: &str) -> Result<Instance> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(LopError::InvalidHeader("empty instance file".into()));
    }

    let mut pos = 0;
    let mut embedded_name = None;
    if tokens[0].2.parse::<f64>().is_err() {
        // name line: consume every token on the first populated line
        let name_line = tokens[0].0;
        let line_text = text.lines().nth(name_line - 1).unwrap_or("").trim();
        embedded_name = Some(line_text.to_string());
        while pos < tokens.len() && tokens[pos].0 == name_line {
            pos += 1;
        }
    }

    let (ln, col, size_tok) = *tokens.get(pos).ok_or_else(|| {
        LopError::InvalidHeader("missing instance size after name line".into())
    })?;
    let n = match size_tok.parse::<i64>() {
        Ok(v) if v >= 1 => v as usize,
        Ok(v) => {
            return Err(LopError::InvalidHeader(format!(
                "instance size must be positive, got {v}"
            )))
        }
        Err(_) if size_tok.parse::<f64>().is_ok() => {
            return Err(LopError::InvalidHeader(format!(
                "instance size must be an integer, got {size_tok}"
            )))
        }
        Err(_) => {
            return Err(LopError::Parse {
                line: ln,
                column: col,
                message: format!("expected instance size, got {size_tok:?}"),
            })
        }
    };
    pos += 1;

    let expected = n.checked_mul(n).ok_or_else(|| {
        LopError::InvalidHeader(format!("instance size {n} is too large"))
    })?;
    let mut weights = Vec::with_capacity(expected);
    for &(ln, col, tok) in tokens.iter().skip(pos).take(expected) {
        let w: f64 = tok.parse().map_err(|_| LopError::Parse {
            line: ln,
            column: col,
            message: format!("expected a numeric weight, got {tok:?}"),
        })?;
        if !w.is_finite() {
            return Err(LopError::Parse {
                line: ln,
                column: col,
                message: format!("weight must be finite, got {tok:?}"),
            });
        }
        weights.push(w);
    }
    if weights.len() < expected {
        return Err(LopError::Truncated {
            expected,
            found: weights.len(),
        });
    }
    let trailing = tokens.len() - pos - expected;
    if trailing > 0 {
        log::warn!("ignoring {trailing} trailing tokens after the {expected}-entry matrix");
    }

    let inst = Instance::from_flat(n, weights)?;
    let name = embedded_name
        .filter(|s| !s.is_empty())
        .or_else(|| (!fallback_name.is_empty()).then(|| fallback_name.to_string()));
    Ok(match name {
        Some(name) => inst.with_name(name),
        None => inst,
    })
}

/// Reads an instance from a file, naming it by the file stem when the file
/// has no name line.
pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_instance(&text, &stem)
}

/// Renders an instance in the dense text format: `n` on its own line, then
/// one space-separated row per line. Entry formatting round-trips exactly
/// through [`parse_instance`].
pub fn write_instance(instance: &Instance) -> String {
    let n = instance.n();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&instance.weight(i, j).to_string());
        }
        out.push('\n');
    }
    out
}

/// Generates an instance with off-diagonal weights drawn independently and
/// uniformly from the integers `[low, high]`. The same arguments always
/// produce the same instance.
pub fn generate_random_instance(n: usize, low: i64, high: i64, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(LopError::InvalidArgument(
            "instance must have at least one object".into(),
        ));
    }
    if low > high {
        return Err(LopError::InvalidArgument(format!(
            "empty weight range: low {low} > high {high}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                weights[i * n + j] = rng.gen_range(low..=high) as f64;
            }
        }
    }
    Ok(Instance::from_flat(n, weights)?.with_name(format!("rand-n{n}-s{seed}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // ===== parsing =====

    #[test]
    fn parses_minimal_file() {
        let inst = parse_instance("2\n0 5\n3 0", "").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.weight(0, 1), 5.0);
        assert_eq!(inst.weight(1, 0), 3.0);
        assert_eq!(inst.name(), None);
    }

    #[test]
    fn truncated_file_is_rejected() {
        match parse_instance("2\n0 5\n3", "") {
            Err(LopError::Truncated { expected, found }) => {
                assert_eq!((expected, found), (4, 3));
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn name_line_is_consumed() {
        let inst = parse_instance("r100a2\n2\n0 5\n3 0", "fallback").unwrap();
        assert_eq!(inst.name(), Some("r100a2"));
        assert_eq!(inst.n(), 2);
    }

    #[test]
    fn fallback_name_used_for_bare_files() {
        let inst = parse_instance("2\n0 5\n3 0", "t1d50.1").unwrap();
        assert_eq!(inst.name(), Some("t1d50.1"));
    }

    #[test]
    fn bad_headers() {
        assert!(matches!(
            parse_instance("0\n", ""),
            Err(LopError::InvalidHeader(_))
        ));
        assert!(matches!(
            parse_instance("-3\n0", ""),
            Err(LopError::InvalidHeader(_))
        ));
        assert!(matches!(
            parse_instance("2.5\n0 1 2 3 4 5", ""),
            Err(LopError::InvalidHeader(_))
        ));
        assert!(matches!(
            parse_instance("some name\nnot-a-size\n", ""),
            Err(LopError::Parse { .. })
        ));
        assert!(matches!(
            parse_instance("", ""),
            Err(LopError::InvalidHeader(_))
        ));
    }

    #[test]
    fn parse_error_carries_position() {
        match parse_instance("2\n0 x\n3 0", "") {
            Err(LopError::Parse { line, column, .. }) => {
                assert_eq!((line, column), (2, 3));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn decimal_weights_accepted() {
        let inst = parse_instance("2\n0 1.5\n-2.25 0", "").unwrap();
        assert_eq!(inst.weight(0, 1), 1.5);
        assert_eq!(inst.weight(1, 0), -2.25);
    }

    #[test]
    fn trailing_tokens_ignored() {
        let inst = parse_instance("2\n0 5\n3 0\n99 98", "").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.total_offdiagonal(), 8.0);
    }

    #[test]
    fn diagonal_zeroed_on_parse() {
        let inst = parse_instance("2\n7 5\n3 9", "").unwrap();
        assert_eq!(inst.weight(0, 0), 0.0);
        assert_eq!(inst.weight(1, 1), 0.0);
    }

    // ===== writing =====

    #[test]
    fn writes_expected_layout() {
        let one = Instance::new(vec![vec![0.0]]).unwrap();
        assert_eq!(write_instance(&one), "1\n0\n");
        let two = Instance::new(vec![vec![0.0, 5.0], vec![3.0, 0.0]]).unwrap();
        assert_eq!(write_instance(&two), "2\n0 5\n3 0\n");
    }

    #[test]
    fn round_trips_generated_instances() {
        for seed in 0..50 {
            let inst = generate_random_instance(6, -20, 80, seed).unwrap();
            let text = write_instance(&inst);
            let back = parse_instance(&text, inst.name().unwrap()).unwrap();
            assert_eq!(back, inst);
            assert_eq!(write_instance(&back), text);
        }
    }

    // ===== generation =====

    #[test]
    fn single_object_instance_is_all_zero() {
        let inst = generate_random_instance(1, 0, 99, 7).unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.weight(0, 0), 0.0);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_random_instance(12, 0, 99, 42).unwrap();
        let b = generate_random_instance(12, 0, 99, 42).unwrap();
        assert_eq!(a, b);
        let c = generate_random_instance(12, 0, 99, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generated_entries_stay_in_range() {
        let inst = generate_random_instance(10, -5, 5, 3).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let w = inst.weight(i, j);
                assert!((-5.0..=5.0).contains(&w), "entry ({i},{j}) = {w}");
            }
        }
    }

    #[test]
    fn empty_range_rejected() {
        assert!(generate_random_instance(3, 5, 4, 0).is_err());
        assert!(generate_random_instance(0, 0, 9, 0).is_err());
    }

    #[test]
    fn generated_mean_matches_uniform_moments() {
        let n = 100;
        let inst = generate_random_instance(n, 0, 99, 12345).unwrap();
        let count = (n * n - n) as f64;
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                sum += inst.weight(i, j);
            }
        }
        let mean = sum / count;
        // uniform over 0..=99: mean 49.5, sd sqrt((100^2 - 1) / 12)
        let se = (833.25_f64 / count).sqrt();
        assert!(
            (mean - 49.5).abs() <= 3.0 * se,
            "mean {mean} outside 49.5 +/- {}",
            3.0 * se
        );
    }

    // ===== properties =====

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn prop_round_trip(n in 1usize..=8, seed in any::<u64>(), low in -50i64..0, span in 0i64..100) {
            let inst = generate_random_instance(n, low, low + span, seed).unwrap();
            let text = write_instance(&inst);
            let back = parse_instance(&text, inst.name().unwrap()).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(write_instance(&back), text);
        }
    }
}
