//! Value parsers for list and range flags.

/// A parsed integer list flag.
#[derive(Debug, Clone, PartialEq)]
pub struct U32List(pub Vec<u32>);

/// A parsed comma-separated float list flag.
#[derive(Debug, Clone, PartialEq)]
pub struct F64List(pub Vec<f64>);

/// `7`, `1-9`, `1..9`, `1..=9` (all inclusive) or comma-separated mixes of those.
pub fn parse_u32_list(text: &str) -> Result<U32List, String> {
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match bounds {
            Some((lo, hi)) => {
                let lo: u32 = lo
                    .trim()
                    .parse()
                    .map_err(|e| format!("bad range start in {part:?}: {e}"))?;
                let hi: u32 = hi
                    .trim()
                    .parse()
                    .map_err(|e| format!("bad range end in {part:?}: {e}"))?;
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                values.extend(lo..=hi);
            }
            None => values.push(
                part.parse()
                    .map_err(|e| format!("bad integer {part:?}: {e}"))?,
            ),
        }
    }
    if values.is_empty() {
        return Err("empty list".into());
    }
    Ok(U32List(values))
}

pub fn parse_f64_list(text: &str) -> Result<F64List, String> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .map_err(|e| format!("bad number {p:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("empty list".into());
    }
    Ok(F64List(values))
}
