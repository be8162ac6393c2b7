//! Reading JSON documents and parsing sequence and sign flags.

use std::io::Read;
use std::path::Path;

use clusterweyl::{EpsPolicy, MutationSequence, Sign, SkewMatrix};
use serde::de::DeserializeOwned;

use crate::commands::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<SkewMatrix, CliError> {
    read_json(path)
}

pub fn parse_seq(s: &str, n: usize) -> Result<MutationSequence, CliError> {
    let labels = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad vertex {t:?} in --seq")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let seq = MutationSequence::from_one_based(&labels)
        .map_err(|_| CliError::Input("vertices are 1-based".into()))?;
    seq.validate(n)
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(seq)
}

fn parse_sign(t: &str) -> Result<Sign, CliError> {
    let v: i64 = t
        .trim()
        .trim_start_matches('+')
        .parse()
        .map_err(|_| CliError::Input(format!("bad sign {t:?}")))?;
    Sign::try_from(v).map_err(CliError::Input)
}

pub fn parse_eps(s: &str, len: usize) -> Result<EpsPolicy, CliError> {
    if !s.contains(',') {
        return Ok(EpsPolicy::Fixed(parse_sign(s)?));
    }
    let signs = s
        .split(',')
        .map(parse_sign)
        .collect::<Result<Vec<_>, _>>()?;
    if signs.len() != len {
        return Err(CliError::Input(format!(
            "--eps has {} signs for a sequence of length {len}",
            signs.len()
        )));
    }
    Ok(EpsPolicy::PerStep(signs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        assert_eq!(parse_seq("2, 1,3", 3).unwrap().as_slice(), [1, 0, 2]);
        assert_eq!(parse_seq("", 3).unwrap().len(), 0);
        assert!(parse_seq("4", 3).is_err());
        assert!(parse_seq("0", 3).is_err());
        assert_eq!(parse_eps("+1", 2).unwrap(), EpsPolicy::Fixed(Sign::Plus));
        assert_eq!(
            parse_eps("-1,1", 2).unwrap(),
            EpsPolicy::PerStep(vec![Sign::Minus, Sign::Plus])
        );
        assert!(parse_eps("-1,1", 3).is_err());
        assert!(parse_eps("2", 1).is_err());
    }
}
