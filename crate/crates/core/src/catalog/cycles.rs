//! Cycle notation: `(1,2,3)(4,5)`, 1-based points, identity `()`.

use crate::error::{Error, Result};
use crate::permkernel::Permutation;

/// Canonical form: cycles start at their least point and are sorted by it.
pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    let mut out = String::new();
    for cycle in cycles {
        out.push('(');
        for (i, k) in cycle.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&(k + 1).to_string());
        }
        out.push(')');
    }
    out
}

/// Parses cycle notation at the given degree. Whitespace is ignored and
/// points not mentioned are fixed.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
    let mut images: Vec<usize> = (0..degree).collect();
    let mut seen = vec![false; degree];
    let bytes = s.as_bytes();
    let mut pos = 0;
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "empty input"));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(err(pos, "expected '('"));
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err(err(pos, "unterminated cycle"));
            }
            if bytes[pos] == b')' && cycle.is_empty() {
                pos += 1;
                break;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(err(pos, "expected a point"));
            }
            let point: usize = s[start..pos]
                .parse()
                .map_err(|_| err(start, "point out of range"))?;
            if point == 0 || point > degree {
                return Err(err(start, &format!("point {point} outside 1..{degree}")));
            }
            if std::mem::replace(&mut seen[point - 1], true) {
                return Err(err(start, &format!("point {point} repeated")));
            }
            cycle.push(point - 1);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                _ => return Err(err(pos, "expected ',' or ')'")),
            }
        }
        for (i, &k) in cycle.iter().enumerate() {
            images[k] = cycle[(i + 1) % cycle.len()];
        }
        skip_ws(&mut pos);
    }
    Permutation::from_images(images)
}
