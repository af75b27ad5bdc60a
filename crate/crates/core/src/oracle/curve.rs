//! Short Weierstrass curves `y^2 = x^3 + ax + b` over a [`FieldCtx`].

use super::field::FieldCtx;
use crate::arith::factorize;
use crate::census::GroupStructure;
use crate::error::{Error, Result};
use num_integer::Integer;

/// An affine point, or `None` for the point at infinity.
pub type Point = Option<(u32, u32)>;

#[derive(Clone, Copy, Debug)]
pub struct ShortCurve<'f> {
    ctx: &'f FieldCtx,
    a: u32,
    b: u32,
}

/// `4a^3 + 27b^2`.
fn discriminant_term(f: &FieldCtx, a: u32, b: u32) -> u32 {
    let a3 = f.mul(a, f.mul(a, a));
    let b2 = f.mul(b, b);
    f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), b2))
}

pub(crate) fn is_singular(f: &FieldCtx, a: u32, b: u32) -> bool {
    discriminant_term(f, a, b) == 0
}

impl<'f> ShortCurve<'f> {
    pub fn new(ctx: &'f FieldCtx, a: u32, b: u32) -> Result<Self> {
        assert!(
            (a as u64) < ctx.q() && (b as u64) < ctx.q(),
            "coefficients must be field elements"
        );
        if is_singular(ctx, a, b) {
            return Err(Error::SingularCurve { a, b });
        }
        Ok(Self { ctx, a, b })
    }

    pub fn ctx(&self) -> &'f FieldCtx {
        self.ctx
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// `x^3 + ax + b`.
    pub fn rhs(&self, x: u32) -> u32 {
        let f = self.ctx;
        f.add(f.mul(f.add(f.mul(x, x), self.a), x), self.b)
    }

    pub fn contains(&self, pt: Point) -> bool {
        match pt {
            None => true,
            Some((x, y)) => self.ctx.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: Point) -> Point {
        pt.map(|(x, y)| (x, self.ctx.neg(y)))
    }

    pub fn add(&self, p1: Point, p2: Point) -> Point {
        let f = self.ctx;
        let ((x1, y1), (x2, y2)) = match (p1, p2) {
            (None, q) | (q, None) => return q,
            (Some(a), Some(b)) => (a, b),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return None;
            }
            // tangent: (3x^2 + a) / 2y
            let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a);
            f.mul(num, f.inv(f.add(y1, y1)))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)))
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        Some((x3, y3))
    }

    pub fn mul(&self, pt: Point, mut e: u64) -> Point {
        let (mut base, mut acc) = (pt, None);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            e >>= 1;
        }
        acc
    }

    /// All rational points, infinity first.
    pub fn points(&self) -> Vec<Point> {
        let f = self.ctx;
        let mut roots: Vec<Vec<u32>> = vec![Vec::new(); f.q() as usize];
        for y in f.elements() {
            roots[f.mul(y, y) as usize].push(y);
        }
        let mut out = vec![None];
        for x in f.elements() {
            out.extend(roots[self.rhs(x) as usize].iter().map(|&y| Some((x, y))));
        }
        out
    }

    /// `#E(F_q)` by summing the quadratic character of the right-hand side.
    pub fn point_count(&self) -> u64 {
        let f = self.ctx;
        let s: i64 = f.elements().map(|x| 1 + f.chi(self.rhs(x)) as i64).sum();
        (1 + s) as u64
    }

    /// `#E(F_q)` by trying every `(x, y)`.
    pub fn point_count_naive(&self) -> u64 {
        let f = self.ctx;
        let affine = f
            .elements()
            .flat_map(|x| f.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| f.mul(y, y) == self.rhs(x))
            .count();
        affine as u64 + 1
    }

    /// Order of `pt`, given the factorization of a multiple of it.
    fn order(&self, pt: Point, n: u64, pairs: &[(u64, u32)]) -> u64 {
        let mut ord = n;
        for &(r, e) in pairs {
            for _ in 0..e {
                if self.mul(pt, ord / r).is_none() {
                    ord /= r;
                } else {
                    break;
                }
            }
        }
        ord
    }

    /// `E(F_q) = Z_m x Z_n` with `n` the group exponent.
    pub fn group_structure(&self) -> GroupStructure {
        let pts = self.points();
        let n_pts = pts.len() as u64;
        let fac = factorize(n_pts).expect("a curve has at least one point");
        let mut exponent = 1u64;
        for &pt in &pts {
            if exponent == n_pts {
                break;
            }
            exponent = exponent.lcm(&self.order(pt, n_pts, fac.pairs()));
        }
        GroupStructure::new(n_pts / exponent, exponent)
    }
}
