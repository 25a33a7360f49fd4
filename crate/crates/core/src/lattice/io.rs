//! Cover-relation text format.
//!
//! ```text
//! # M_2
//! 4
//! 0 1
//! 0 2
//! 1 3
//! 2 3
//! ```
//!
//! First non-comment line is the element count `n`; each further line
//! `a b` is a cover edge `a ⋖ b` with 0-based ids. `#` starts a comment.

use std::fmt::Write;

use super::Lattice;
use crate::error::{Error, Result};

pub fn read_cover_relation(text: &str) -> Result<Lattice> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("missing element count".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("element count: {e}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace().map(|t| t.parse::<usize>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => edges.push((a, b)),
            _ => return Err(Error::Parse(format!("bad cover edge `{line}`"))),
        }
    }
    Lattice::from_cover_relation(n, &edges)
}

pub fn write_cover_relation(lattice: &Lattice) -> String {
    let mut out = format!("{}\n", lattice.size());
    for (a, b) in lattice.cover_edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeSpec;

    #[test]
    fn reads_comments_and_roundtrips() {
        let text = "# diamond\n4\n0 1 # left\n0 2\n\n1 3\n2 3\n";
        let l = read_cover_relation(text).unwrap();
        assert_eq!(l.size(), 4);
        assert_eq!(write_cover_relation(&l), "4\n0 1\n0 2\n1 3\n2 3\n");
    }

    #[test]
    fn writer_sorts_edges_and_reader_accepts_output() {
        let l = LatticeSpec::Pentagon.build().unwrap();
        let text = write_cover_relation(&l);
        assert_eq!(text, "5\n0 1\n0 3\n1 2\n2 4\n3 4\n");
        assert_eq!(read_cover_relation(&text).unwrap(), l);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(read_cover_relation("").is_err());
        assert!(read_cover_relation("3\n0 1 2\n").is_err());
        assert!(read_cover_relation("3\n0 x\n").is_err());
        assert!(read_cover_relation("2\n0 5\n").is_err());
    }
}
