//! graph6 encoding: one simple graph per ASCII line.
//!
//! Layout: a size header N(n) followed by the upper triangle of the adjacency
//! matrix in column-major order (x_{0,1}, x_{0,2}, x_{1,2}, x_{0,3}, ...),
//! packed big-endian into 6-bit groups, zero-padded, each group offset by 63.
//! The short header (one byte, n + 63) covers n <= 62; the long header
//! ('~' then three bytes) covers n <= 258047.

use crate::bitset::VertexSet;
use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed header byte 0x{0:02x}")]
    BadHeader(u8),
    #[error("byte 0x{0:02x} outside the graph6 alphabet")]
    BadByte(u8),
    #[error("truncated bit payload: expected {expected} payload bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing data after the bit payload")]
    TrailingData,
    #[error("padding bits are not zero")]
    NonzeroPadding,
    #[error("graph order {0} is too large for this encoder")]
    TooLarge(usize),
}

const MAX_LONG: usize = 258047;

fn payload_len(n: usize) -> usize {
    let bits = n * (n.saturating_sub(1)) / 2;
    bits.div_ceil(6)
}

/// Parse one graph6 line (no trailing newline).
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, offset) = if bytes[0] == 126 {
        // Long form; the 8-byte '~~' form is beyond our cap.
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Graph6Error::TooLarge(MAX_LONG + 1));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 3,
                got: bytes.len() - 1,
            });
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Graph6Error::BadByte(b));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        let b = bytes[0];
        if !(63..=125).contains(&b) {
            return Err(Graph6Error::BadHeader(b));
        }
        ((b - 63) as usize, 1)
    };
    let need = payload_len(n);
    let got = bytes.len() - offset;
    if got < need {
        return Err(Graph6Error::Truncated {
            expected: need,
            got,
        });
    }
    if got > need {
        return Err(Graph6Error::TrailingData);
    }
    let mut adj = vec![VertexSet::new(); n];
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut bit_index = 0usize;
    let mut col = 1usize;
    let mut row = 0usize;
    for &b in &bytes[offset..] {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte(b));
        }
        let group = b - 63;
        for k in 0..6 {
            let bit = (group >> (5 - k)) & 1;
            if bit_index >= total_bits {
                if bit != 0 {
                    return Err(Graph6Error::NonzeroPadding);
                }
            } else if bit == 1 {
                adj[row].insert(col);
                adj[col].insert(row);
            }
            bit_index += 1;
            if bit_index < total_bits {
                row += 1;
                if row == col {
                    col += 1;
                    row = 0;
                }
            }
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Encode a graph as a graph6 line.
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_LONG {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            group <<= 1;
            if g.has_edge(row, col) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(group + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
