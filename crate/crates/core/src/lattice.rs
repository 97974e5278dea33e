//! Ferrers-Young lattices.
//!
//! The lattice of a partition `λ` at a nonreal `z` is the set of points
//! `a·z + b` with `1 ≤ |b| ≤ len(λ)` and `1 ≤ |a| ≤ λ_{|b|}`: the Ferrers
//! diagram placed in all four quadrants of the lattice generated by `z` and 1.
//! Pairs are streamed, never materialized, since large rectangles are common.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{require_nonreal, Scalar};
use crate::partitions::Partition;

/// Coefficients of the lattice point `a·z + b`. Both are nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPair {
    pub a: i64,
    pub b: i64,
}

impl CoeffPair {
    pub fn new(a: i64, b: i64) -> Self {
        CoeffPair { a, b }
    }

    /// Quadrant index by sign pattern: 1 `(+,+)`, 2 `(+,−)`, 3 `(−,−)`, 4 `(−,+)`.
    pub fn quadrant(&self) -> u8 {
        match (self.a > 0, self.b > 0) {
            (true, true) => 1,
            (true, false) => 2,
            (false, false) => 3,
            (false, true) => 4,
        }
    }

    /// Whether the pair belongs to the lattice of `lambda`.
    pub fn belongs_to(&self, lambda: &Partition) -> bool {
        let (a, b) = (
            self.a.unsigned_abs() as usize,
            self.b.unsigned_abs() as usize,
        );
        a >= 1 && b >= 1 && b <= lambda.len() && a <= lambda.part(b)
    }
}

const QUADRANT_SIGNS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, -1), (-1, 1)];

/// Stream of coefficient pairs over a range of quadrants.
///
/// Order: quadrant ascending, then `|b|` ascending, then `|a|` ascending.
#[derive(Clone, Debug)]
pub struct CoeffPairs<'a> {
    parts: &'a [usize],
    quadrant: usize,
    last_quadrant: usize,
    row: usize,
    col: usize,
}

impl<'a> CoeffPairs<'a> {
    fn over(lambda: &'a Partition, first: usize, last: usize) -> Self {
        CoeffPairs {
            parts: lambda.parts(),
            quadrant: first,
            last_quadrant: last,
            row: 0,
            col: 1,
        }
    }
}

impl Iterator for CoeffPairs<'_> {
    type Item = CoeffPair;

    fn next(&mut self) -> Option<CoeffPair> {
        loop {
            if self.quadrant > self.last_quadrant || self.parts.is_empty() {
                return None;
            }
            if self.row >= self.parts.len() {
                self.quadrant += 1;
                self.row = 0;
                self.col = 1;
                continue;
            }
            if self.col > self.parts[self.row] {
                self.row += 1;
                self.col = 1;
                continue;
            }
            let (sa, sb) = QUADRANT_SIGNS[self.quadrant - 1];
            let pair = CoeffPair::new(sa * self.col as i64, sb * (self.row as i64 + 1));
            self.col += 1;
            return Some(pair);
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        if self.quadrant > self.last_quadrant {
            return (0, Some(0));
        }
        let size: usize = self.parts.iter().sum();
        let done: usize = self.parts[..self.row.min(self.parts.len())]
            .iter()
            .sum::<usize>()
            + self.col
            - 1;
        let n = (self.last_quadrant - self.quadrant + 1) * size - done.min(size);
        (n, Some(n))
    }
}

impl ExactSizeIterator for CoeffPairs<'_> {}

/// All `4·|λ|` coefficient pairs of the lattice of `lambda`.
pub fn coeff_pairs(lambda: &Partition) -> CoeffPairs<'_> {
    CoeffPairs::over(lambda, 1, 4)
}

/// The `|λ|` pairs in one quadrant (1 to 4).
pub fn quadrant_pairs(lambda: &Partition, quadrant: u8) -> Result<CoeffPairs<'_>> {
    if !(1..=4).contains(&quadrant) {
        return Err(Error::out_of_range("quadrant", "in 1..=4", quadrant as i64));
    }
    let q = quadrant as usize;
    Ok(CoeffPairs::over(lambda, q, q))
}

/// The lattice point `a·z + b`.
pub fn point<S: Scalar>(pair: CoeffPair, z: &S) -> Result<S> {
    require_nonreal(z)?;
    Ok(point_unchecked(pair, z))
}

pub(crate) fn point_unchecked<S: Scalar>(pair: CoeffPair, z: &S) -> S {
    S::from_i64(pair.a) * z.clone() + S::from_i64(pair.b)
}

/// Smallest `|ω|` over the lattice; `None` for the empty partition.
pub fn min_modulus<S: Scalar>(lambda: &Partition, z: &S) -> Result<Option<f64>> {
    require_nonreal(z)?;
    let zf = z.to_c64();
    Ok(coeff_pairs(lambda)
        .map(|p| (p.a as f64 * zf + p.b as f64).norm())
        .min_by(f64::total_cmp))
}

/// Drawing options for [`render_svg`].
#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Pixels per unit.
    pub scale: f64,
    pub dot_radius: f64,
    pub axes: bool,
    /// Dashed line through 0 and `z`.
    pub diagonal: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 20.0,
            dot_radius: 2.5,
            axes: true,
            diagonal: true,
        }
    }
}

fn coord(x: f64) -> String {
    format!("{:.3}", x + 0.0)
}

/// Renders the lattice as an SVG 1.1 document.
///
/// Positive imaginary part points up. The square view box depends only on
/// `λ_1`, `len(λ)` and `z`, and circles appear in pair-stream order, so equal
/// inputs give byte-identical output.
pub fn render_svg(lambda: &Partition, z: Complex64, options: &SvgOptions) -> Result<String> {
    require_nonreal(&z)?;
    let s = options.scale;
    let (x, y) = (z.re.abs(), z.im.abs());
    let reach = (lambda.largest() as f64 * x + lambda.len() as f64)
        .max(lambda.largest() as f64 * y)
        .max(x)
        .max(y);
    let half = (reach.ceil() + 2.0) * s;
    let side = 2.0 * half;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{w}\" viewBox=\"{o} {o} {w} {w}\">",
        w = coord(side),
        o = coord(-half),
    );
    let _ = writeln!(
        out,
        "<rect x=\"{o}\" y=\"{o}\" width=\"{w}\" height=\"{w}\" fill=\"white\"/>",
        w = coord(side),
        o = coord(-half),
    );
    let edge = half - 0.5 * s;
    let font = coord(0.6 * s);
    if options.axes {
        out.push_str("<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n");
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"0.000\" x2=\"{}\" y2=\"0.000\"/>",
            coord(-edge),
            coord(edge)
        );
        let _ = writeln!(
            out,
            "<line x1=\"0.000\" y1=\"{}\" x2=\"0.000\" y2=\"{}\"/>",
            coord(edge),
            coord(-edge)
        );
        out.push_str("</g>\n");
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{font}\" font-style=\"italic\">x</text>",
            coord(edge - 0.4 * s),
            coord(-0.3 * s)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{font}\" font-style=\"italic\">iy</text>",
            coord(0.3 * s),
            coord(-edge + 0.4 * s)
        );
    }
    if options.diagonal {
        // extend the line through 0 and z to the frame
        let t = edge / (z.re.abs().max(z.im.abs()) * s);
        let (dx, dy) = (z.re * s * t, -z.im * s * t);
        let _ = writeln!(
            out,
            "<line class=\"diagonal\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
            coord(-dx),
            coord(-dy),
            coord(dx),
            coord(dy)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"{font}\" font-style=\"italic\">tz</text>",
            coord(dx * 0.9 + 0.3 * s),
            coord(dy * 0.9)
        );
    }
    out.push_str("<g class=\"dots\" fill=\"black\">\n");
    for pair in coeff_pairs(lambda) {
        let w = pair.a as f64 * z + pair.b as f64;
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            coord(w.re * s),
            coord(-w.im * s),
            coord(options.dot_radius)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
