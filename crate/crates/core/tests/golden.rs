//! The stored SVG figures checked against coordinates computed directly from
//! the set definition of the lattice.

use std::path::Path;

use num_complex::Complex64;
use parteis::lattice::{render_svg, SvgOptions};
use parteis::partitions::Partition;

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn attr(tag: &str, name: &str) -> f64 {
    let start = tag.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
    let end = start + tag[start..].find('"').unwrap();
    tag[start..end].parse().unwrap()
}

fn circles(svg: &str) -> Vec<(f64, f64)> {
    svg.lines()
        .filter(|l| l.starts_with("<circle"))
        .map(|l| (attr(l, "cx"), attr(l, "cy")))
        .collect()
}

/// `{a·z + b : 1 ≤ |b| ≤ len, 1 ≤ |a| ≤ λ_|b|}` in SVG coordinates (y down).
fn expected(parts: &[usize], z: Complex64, scale: f64) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for (row, &width) in parts.iter().enumerate() {
        let b = row as f64 + 1.0;
        for a in 1..=width {
            for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)] {
                let w = z * (sa * a as f64) + sb * b;
                pts.push((scale * w.re, -scale * w.im));
            }
        }
    }
    pts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    pts
}

#[test]
fn figures_hold_the_lattice_points() {
    let z = Complex64::new(1.0, 1.0);
    for (parts, file) in [
        (&[3, 2, 2, 1][..], "lattice_3221.svg"),
        (&[4, 3, 1][..], "lattice_431.svg"),
    ] {
        let svg = golden(file);
        let mut dots = circles(&svg);
        assert_eq!(dots.len(), 32);
        assert_eq!(svg.matches("<circle").count(), 32);
        dots.sort_by(|p, q| p.partial_cmp(q).unwrap());
        assert_eq!(dots, expected(parts, z, SvgOptions::default().scale));
    }
}

#[test]
fn empty_partition_draws_axes_only() {
    let svg = golden("lattice_empty.svg");
    assert!(circles(&svg).is_empty());
    assert_eq!(svg.matches("<line").count(), 3);
}

#[test]
fn rendering_is_byte_stable() {
    for (parts, z, file) in [
        ("3,2,2,1", Complex64::new(1.0, 1.0), "lattice_3221.svg"),
        ("4,3,1", Complex64::new(1.0, 1.0), "lattice_431.svg"),
        ("", Complex64::new(0.0, 1.0), "lattice_empty.svg"),
    ] {
        let lambda: Partition = parts.parse().unwrap();
        let opts = SvgOptions::default();
        let a = render_svg(&lambda, z, &opts).unwrap();
        let b = render_svg(&lambda, z, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, golden(file));
    }
}

#[test]
fn conjugate_figures_mirror_across_the_diagonal_at_i() {
    // At z = i the index swap (a, b) ↦ (b, a) is the reflection x ↔ y.
    let z = Complex64::new(0.0, 1.0);
    let lambda: Partition = "3,2,2,1".parse().unwrap();
    let opts = SvgOptions::default();
    let mut left: Vec<(f64, f64)> = circles(&render_svg(&lambda, z, &opts).unwrap())
        .into_iter()
        .map(|(x, y)| (-y, -x))
        .collect();
    let mut right = circles(&render_svg(&lambda.conjugate(), z, &opts).unwrap());
    left.sort_by(|p, q| p.partial_cmp(q).unwrap());
    right.sort_by(|p, q| p.partial_cmp(q).unwrap());
    assert_eq!(left, right);
}
