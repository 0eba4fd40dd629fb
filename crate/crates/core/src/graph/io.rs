use std::fmt::Write;

use crate::error::{Error, Result};

use super::Graph;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// graph6 encoding, without header or trailing newline.
pub fn to_graph6(g: &Graph) -> Vec<u8> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n as u32 {
        let nbrs = g.neighbors(j);
        // neighbours below j, in increasing order
        let mut below = nbrs.iter().take_while(|&&v| v < j).peekable();
        for i in 0..j {
            let bit = if below.peek() == Some(&&i) {
                below.next();
                1
            } else {
                0
            };
            acc = (acc << 1) | bit;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    out
}

pub fn from_graph6(data: &[u8]) -> Result<Graph> {
    let data = data.strip_prefix(b">>graph6<<").unwrap_or(data);
    let data = data.trim_ascii_end();
    if data.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 byte outside 63..=126".into()));
    }
    let (n, body) = match data {
        [126, 126, rest @ ..] if rest.len() >= 6 => {
            let n = rest[..6].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] if rest.len() >= 3 => {
            let n = rest[..3].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] if *first != 126 => ((first - 63) as usize, rest),
        _ => return Err(Error::Parse("truncated graph6 size".into())),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {needed} for {n} vertices",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n as u32 {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        if g.degree(v as u32) == 0 {
            let _ = writeln!(s, "  {v};");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle};

    #[test]
    fn known_graph6_strings() {
        // reference encodings from the format description
        assert_eq!(to_graph6(&complete(6)), b"E~~w");
        assert_eq!(to_graph6(&cycle(5)), b"Dhc");
        assert_eq!(to_graph6(&Graph::from_edges(1, &[]).unwrap()), b"@");
    }

    #[test]
    fn graph6_roundtrip_with_long_size() {
        let g = cycle(100);
        let bytes = to_graph6(&g);
        assert_eq!(&bytes[..4], &[126, 63, 64, 99]);
        assert_eq!(from_graph6(&bytes).unwrap(), g);
        assert_eq!(from_graph6(b">>graph6<<E~~w\n").unwrap(), complete(6));
    }

    #[test]
    fn malformed_graph6_is_rejected() {
        assert!(from_graph6(b"E~~").is_err());
        assert!(from_graph6(b"E~~w~").is_err());
        assert!(from_graph6(b"").is_err());
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = to_dot(&cycle(4));
        assert_eq!(dot.matches(" -- ").count(), 4);
    }
}
