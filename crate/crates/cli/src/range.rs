//! Parameter lists for `scan`: `3`, `1..9` (inclusive), `2..24:2`, or a
//! comma-separated mix such as `2,3,5..7`.

use std::collections::BTreeSet;

pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(format!("empty item in {s:?}"));
        }
        let (span, step) = match part.split_once(':') {
            Some((span, step)) => (span, num(step)?),
            None => (part, 1),
        };
        if step == 0 {
            return Err(format!("step must be positive in {part:?}"));
        }
        match span.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend((lo..=hi).step_by(step as usize));
            }
            None if step != 1 => return Err(format!("step without a range in {part:?}")),
            None => {
                out.insert(num(span)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn num(s: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("not a non-negative integer: {s:?}"))
}
