//! Line-oriented scene files holding the chain parameters and the `m`
//! similarities.
//!
//! ```text
//! genus2-scene v1
//! params R r k m
//! map j scale s rot r11 r12 r13 r21 r22 r23 r31 r32 r33 trans t1 t2 t3
//! ```
//!
//! Reals are written with 17 significant digits, which round-trips every
//! `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::Matrix3;

use crate::chain::{Chain, ChainParams};
use crate::error::{Error, Result};
use crate::geometry::{Similarity, Vec3};

pub const SCENE_HEADER: &str = "genus2-scene v1";

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serialized scene text.
pub fn scene_to_string(chain: &Chain) -> String {
    let p = &chain.params;
    let mut s = String::new();
    writeln!(s, "{SCENE_HEADER}").unwrap();
    writeln!(
        s,
        "params {} {} {} {}",
        real(p.big_r),
        real(p.small_r),
        real(p.k),
        p.m
    )
    .unwrap();
    for (j, map) in chain.maps.iter().enumerate() {
        write!(s, "map {} scale {} rot", j + 1, real(map.scale())).unwrap();
        let q = map.rotation();
        for r in 0..3 {
            for c in 0..3 {
                write!(s, " {}", real(q[(r, c)])).unwrap();
            }
        }
        let t = map.translation();
        writeln!(s, " trans {} {} {}", real(t.x), real(t.y), real(t.z)).unwrap();
    }
    s
}

pub fn write_scene(chain: &Chain, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, scene_to_string(chain))?;
    Ok(())
}

pub fn read_scene(path: impl AsRef<Path>) -> Result<Chain> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_scene(&text, path)
}

struct Cursor<'a> {
    path: &'a Path,
    line: usize,
    tokens: std::str::SplitWhitespace<'a>,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Malformed {
            path: PathBuf::from(self.path),
            line: self.line,
            message: message.into(),
        }
    }

    fn keyword(&mut self, want: &str) -> Result<()> {
        match self.tokens.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(self.err(format!("expected `{want}`, found `{t}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of line"))),
        }
    }

    fn real(&mut self, what: &str) -> Result<f64> {
        let t = self
            .tokens
            .next()
            .ok_or_else(|| self.err(format!("missing {what}")))?;
        let x: f64 = t
            .parse()
            .map_err(|_| self.err(format!("{what}: `{t}` is not a number")))?;
        if !x.is_finite() {
            return Err(self.err(format!("{what} is not finite")));
        }
        Ok(x)
    }

    fn integer(&mut self, what: &str) -> Result<usize> {
        let t = self
            .tokens
            .next()
            .ok_or_else(|| self.err(format!("missing {what}")))?;
        t.parse()
            .map_err(|_| self.err(format!("{what}: `{t}` is not a non-negative integer")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.tokens.next() {
            Some(t) => Err(self.err(format!("unexpected trailing token `{t}`"))),
            None => Ok(()),
        }
    }
}

/// Parses scene text; `path` is only used in error messages.
pub fn parse_scene(text: &str, path: &Path) -> Result<Chain> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let malformed = |line: usize, message: &str| Error::Malformed {
        path: path.to_path_buf(),
        line,
        message: message.to_string(),
    };

    let (_, header) = lines.next().ok_or_else(|| malformed(1, "empty scene file"))?;
    if header != SCENE_HEADER {
        return Err(Error::UnsupportedVersion(header.to_string()));
    }

    let (line, text) = lines.next().ok_or_else(|| malformed(2, "missing params line"))?;
    let mut cur = Cursor {
        path,
        line,
        tokens: text.split_whitespace(),
    };
    cur.keyword("params")?;
    let big_r = cur.real("R")?;
    let small_r = cur.real("r")?;
    let k = cur.real("k")?;
    let m = cur.integer("m")?;
    cur.finish()?;
    let params = ChainParams::new(big_r, small_r, m, Some(k))
        .map_err(|e| Error::InvariantViolation(format!("line {line}: {e}")))?;

    let mut maps = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut cur = Cursor {
            path,
            line,
            tokens: text.split_whitespace(),
        };
        cur.keyword("map")?;
        let j = cur.integer("map index")?;
        if j != maps.len() + 1 {
            return Err(cur.err(format!("expected map {}, found map {j}", maps.len() + 1)));
        }
        if j > m {
            return Err(cur.err(format!("more than m = {m} maps")));
        }
        cur.keyword("scale")?;
        let scale = cur.real("scale")?;
        cur.keyword("rot")?;
        let mut q = [0.0; 9];
        for (i, slot) in q.iter_mut().enumerate() {
            *slot = cur.real(&format!("rotation entry {}", i + 1))?;
        }
        cur.keyword("trans")?;
        let t = Vec3::new(cur.real("t1")?, cur.real("t2")?, cur.real("t3")?);
        cur.finish()?;
        let rotation = Matrix3::from_row_slice(&q);
        let map = Similarity::new(scale, rotation, t)
            .map_err(|e| Error::InvariantViolation(format!("line {line}: map {j}: {e}")))?;
        maps.push(map);
    }
    if maps.len() != m {
        return Err(Error::InvariantViolation(format!(
            "scene declares m = {m} but lists {} maps",
            maps.len()
        )));
    }
    Chain::from_maps(params, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build_chain;

    fn chain() -> Chain {
        build_chain(&ChainParams::new(1.0, 0.08, 32, None).unwrap()).unwrap()
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let c = chain();
        let text = scene_to_string(&c);
        assert!(text.starts_with("genus2-scene v1\nparams "));
        let back = parse_scene(&text, Path::new("mem")).unwrap();
        assert_eq!(back.params, c.params);
        for (a, b) in back.maps.iter().zip(&c.maps) {
            assert_eq!(a.scale().to_bits(), b.scale().to_bits());
            for (x, y) in a.rotation().iter().zip(b.rotation().iter()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
            for (x, y) in a.translation().iter().zip(b.translation().iter()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
        assert_eq!(scene_to_string(&back), text);
    }

    #[test]
    fn version_and_malformed_lines() {
        let text = scene_to_string(&chain());
        let v2 = text.replacen("genus2-scene v1", "genus2-scene v2", 1);
        assert!(matches!(
            parse_scene(&v2, Path::new("s")),
            Err(Error::UnsupportedVersion(_))
        ));
        let broken = text.replacen("map 3 scale", "map 3 scael", 1);
        match parse_scene(&broken, Path::new("s")) {
            Err(Error::Malformed { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        let short: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            parse_scene(&short, Path::new("s")),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn non_orthonormal_rotation_rejected() {
        let text = scene_to_string(&chain());
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let mut toks: Vec<String> = lines[2].split_whitespace().map(String::from).collect();
        // perturb r11 by 1e-3
        let r11: f64 = toks[5].parse().unwrap();
        toks[5] = format!("{:.16e}", r11 + 1e-3);
        lines[2] = toks.join(" ");
        let bad = lines.join("\n");
        assert!(matches!(
            parse_scene(&bad, Path::new("s")),
            Err(Error::InvariantViolation(_))
        ));
    }
}
