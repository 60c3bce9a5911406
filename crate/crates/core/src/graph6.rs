//! graph6 encoding of undirected simple graphs (McKay's format).

use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Encodes a graph on `n` vertices given an adjacency predicate over `i < j`.
pub fn encode(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> String {
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

/// Decodes one graph6 line into a vertex count and 0-based edges `(i, j)`, `i < j`.
pub fn decode(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!(
            "byte {b} outside the printable range 63..=126"
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => (read_size(rest, 6)?, &rest[6..]),
        [126, rest @ ..] => (read_size(rest, 3)?, &rest[3..]),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if body.len() != needed {
        return Err(Error::Graph6(format!(
            "expected {needed} adjacency bytes for n={n}, found {}",
            body.len()
        )));
    }
    let bit = |t: usize| (body[t / 6] - 63) >> (5 - t % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(t) {
                edges.push((i, j));
            }
            t += 1;
        }
    }
    edges.sort_unstable();
    Ok((n, edges))
}

fn read_size(bytes: &[u8], count: usize) -> Result<usize> {
    if bytes.len() < count {
        return Err(Error::Graph6("truncated size field".into()));
    }
    Ok(bytes[..count]
        .iter()
        .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        // examples from the format description
        assert_eq!(encode(0, |_, _| false), "?");
        assert_eq!(encode(1, |_, _| false), "@");
        // 5-cycle 0-1-2-3-4-0 is "Dhc"
        let cycle = |i: usize, j: usize| j - i == 1 || (i == 0 && j == 4);
        assert_eq!(encode(5, cycle), "Dhc");
        assert_eq!(
            decode("Dhc\n").unwrap().1,
            vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(decode(">>graph6<<A_").unwrap(), (2, vec![(0, 1)]));
        let doc = [(0, 2), (0, 4), (1, 3), (3, 4)];
        assert_eq!(encode(5, |i, j| doc.contains(&(i, j))), "DQc");
    }

    #[test]
    fn long_size_field() {
        let n = 100;
        let text = encode(n, |i, j| j == i + 1);
        assert_eq!(&text.as_bytes()[..4], &[126, 63, 64, 63 + 36]);
        let (m, edges) = decode(&text).unwrap();
        assert_eq!(m, n);
        assert_eq!(edges.len(), n - 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decode("").is_err());
        assert!(decode("Dh").is_err());
        assert!(decode("D\u{7f}c").is_err());
    }
}
