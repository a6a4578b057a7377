//! graph6 and edge-list formats.

use std::io::Write;

use super::DenseGraph;
use crate::error::{Error, Result};

pub const GRAPH6_HEADER: &[u8] = b">>graph6<<";

fn encode_n(n: u64, out: &mut Vec<u8>) -> Result<()> {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else if n <= 68_719_476_735 {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        return Err(Error::FormatOverflow(n));
    }
    Ok(())
}

/// graph6 encoding, newline-terminated, optionally with the `>>graph6<<`
/// header.
pub fn to_graph6(g: &DenseGraph, header: bool) -> Result<Vec<u8>> {
    let n = g.order();
    let mut out = Vec::new();
    if header {
        out.extend_from_slice(GRAPH6_HEADER);
    }
    encode_n(n as u64, &mut out)?;
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n as u32 {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    out.push(b'\n');
    Ok(out)
}

pub fn from_graph6(data: &[u8]) -> Result<DenseGraph> {
    let mut s = data.strip_prefix(GRAPH6_HEADER).unwrap_or(data);
    while let Some(rest) = s.strip_suffix(b"\n").or_else(|| s.strip_suffix(b"\r")) {
        s = rest;
    }
    if let Some(&bad) = s.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {bad} out of range")));
    }
    let (n, body) = match s {
        [126, 126, rest @ ..] if rest.len() >= 6 => (rest[..6].iter().fold(0u64, |a, &b| a << 6 | (b - 63) as u64), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (rest[..3].iter().fold(0u64, |a, &b| a << 6 | (b - 63) as u64), &rest[3..]),
        [b, rest @ ..] if *b != 126 => ((b - 63) as u64, rest),
        _ => return Err(Error::Graph6("truncated size".into())),
    };
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Graph6(format!("expected {} data bytes, found {}", bits.div_ceil(6), body.len())));
    }
    let mut g = DenseGraph::new(n);
    let mut k = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// One `u v` line per edge, `u < v`, 0-indexed.
pub fn to_edgelist(g: &DenseGraph, mut out: impl Write) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::small;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        assert_eq!(to_graph6(&small::complete(3), false).unwrap(), b"Bw\n");
        assert_eq!(to_graph6(&DenseGraph::new(1), false).unwrap(), b"@\n");
        assert_eq!(to_graph6(&DenseGraph::new(0), true).unwrap(), b">>graph6<<?\n");
        // size field of a 63-vertex graph takes the long form
        let g = to_graph6(&DenseGraph::new(63), false).unwrap();
        assert_eq!(&g[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(to_graph6(&small::petersen(), false).unwrap().len(), 1 + 8 + 1);
        let mut buf = Vec::new();
        to_edgelist(&small::path(3), &mut buf).unwrap();
        assert_eq!(buf, b"0 1\n1 2\n");
    }

    #[test]
    fn size_limits() {
        let mut out = Vec::new();
        assert!(matches!(encode_n(68_719_476_736, &mut out), Err(Error::FormatOverflow(_))));
        out.clear();
        encode_n(258_048, &mut out).unwrap();
        assert_eq!(&out[..2], &[126, 126]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_graph6(b"Bx!").is_err());
        assert!(from_graph6(b"C").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..80, edges in proptest::collection::vec((0u32..80, 0u32..80), 0..300), header: bool) {
            let g = DenseGraph::from_edges(n, edges.into_iter().filter(|&(u, v)| (u as usize) < n && (v as usize) < n));
            let enc = to_graph6(&g, header).unwrap();
            prop_assert_eq!(from_graph6(&enc).unwrap(), g);
        }
    }
}
