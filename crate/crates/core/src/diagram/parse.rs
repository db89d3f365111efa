//! Text grammar: `K-=<kg>; K+=<kg>; H=gen{(<q>,<q>),...}`.

use crate::error::{Error, Result};
use crate::groups::{closure, FiniteSubgroup, SlopeCircle, DEFAULT_CAP};
use crate::qfield::{exp_axis, GroupElement, Quaternion};

use super::{Diagram, IsotropySubgroup};

#[derive(Clone, Debug)]
enum KShape {
    Circle { circle: SlopeCircle, times_h: bool },
    Diag { times_h: bool },
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        match self.src[start..end].parse() {
            Ok(v) => {
                self.pos = end;
                Ok(v)
            }
            Err(_) => self.err("expected an integer"),
        }
    }

    fn axis(&mut self) -> Result<Quaternion> {
        for (name, idx) in [("i", 0), ("j", 1), ("k", 2)] {
            if self.eat(name) {
                return Ok(Quaternion::basis(idx));
            }
        }
        self.err("expected an axis i, j or k")
    }

    fn quaternion(&mut self) -> Result<Quaternion> {
        let neg = self.eat("-");
        let q = if self.eat("e(") {
            let u = self.axis()?;
            self.expect(",")?;
            let t = self.int()?;
            self.expect("/")?;
            let n = self.int()?;
            self.expect(")")?;
            exp_axis(&u, t, n)?
        } else if self.eat("1") {
            Quaternion::one()
        } else {
            self.axis().or_else(|_| self.err("expected a quaternion literal: 1, i, j, k or e(<axis>,<t>/<n>)"))?
        };
        Ok(if neg { -q } else { q })
    }

    fn pair(&mut self) -> Result<GroupElement> {
        self.expect("(")?;
        let l = self.quaternion()?;
        self.expect(",")?;
        let r = self.quaternion()?;
        self.expect(")")?;
        Ok(GroupElement::new(l, r))
    }

    fn kgroup(&mut self) -> Result<KShape> {
        let shape = if self.eat("C(") {
            let axis = self.axis()?;
            self.expect(",")?;
            let p = self.int()?;
            self.expect(",")?;
            let q = self.int()?;
            self.expect(")")?;
            KShape::Circle { circle: SlopeCircle::new(axis, p, q), times_h: false }
        } else if self.eat("DS3") {
            KShape::Diag { times_h: false }
        } else {
            return self.err(
                "expected C(<axis>,<p>,<q>) or DS3; only circle and diagonal-S3 isotropy groups are supported",
            );
        };
        let times_h = if self.eat("*") {
            self.expect("H")?;
            true
        } else {
            false
        };
        Ok(match shape {
            KShape::Circle { circle, .. } => KShape::Circle { circle, times_h },
            KShape::Diag { .. } => KShape::Diag { times_h },
        })
    }

    fn generators(&mut self) -> Result<Vec<GroupElement>> {
        self.expect("gen{")?;
        let mut gens = Vec::new();
        if self.eat("}") {
            return Ok(gens);
        }
        loop {
            gens.push(self.pair()?);
            if self.eat("}") {
                return Ok(gens);
            }
            self.expect(",")?;
        }
    }
}

fn build(shape: KShape, h: &FiniteSubgroup) -> IsotropySubgroup {
    let fin = |times_h: bool| if times_h { h.clone() } else { FiniteSubgroup::trivial() };
    match shape {
        KShape::Circle { circle, times_h } => IsotropySubgroup::CircleDot { circle, finite: fin(times_h) },
        KShape::Diag { times_h } => IsotropySubgroup::DiagS3Dot { finite: fin(times_h) },
    }
}

/// Parses one diagram line; the result is not yet validated.
pub fn parse(text: &str) -> Result<Diagram> {
    let mut cur = Cursor { src: text, pos: 0 };
    let (mut km, mut kp, mut gens) = (None, None, None);
    loop {
        let start = cur.pos;
        if cur.eat("K-=") {
            if km.is_some() {
                return Err(Error::Parse { pos: start, msg: "K- given twice".into() });
            }
            km = Some(cur.kgroup()?);
        } else if cur.eat("K+=") {
            if kp.is_some() {
                return Err(Error::Parse { pos: start, msg: "K+ given twice".into() });
            }
            kp = Some(cur.kgroup()?);
        } else if cur.eat("H=") {
            if gens.is_some() {
                return Err(Error::Parse { pos: start, msg: "H given twice".into() });
            }
            let at = cur.pos;
            let g = cur.generators()?;
            gens = Some((at, g));
        } else {
            return cur.err("expected `K-=`, `K+=` or `H=`");
        }
        if cur.peek().is_none() {
            break;
        }
        cur.expect(";")?;
        if cur.peek().is_none() {
            break;
        }
    }
    let end = text.len();
    let missing = |what: &str| Error::Parse { pos: end, msg: format!("missing {what} clause") };
    let km = km.ok_or_else(|| missing("K-"))?;
    let kp = kp.ok_or_else(|| missing("K+"))?;
    let (at, gens) = gens.ok_or_else(|| missing("H"))?;
    let h = closure(&gens, DEFAULT_CAP).map_err(|e| match e {
        Error::UnsupportedAngle { .. } => e,
        other => Error::Parse { pos: at, msg: format!("H does not generate a finite group: {other}") },
    })?;
    Ok(Diagram::new(build(km, &h), build(kp, &h), h))
}
