//! Cube shells and commutative cubes.
//!
//! Vertical edges `z00, z01, z10, z11` run from the corners TL, TR, BL, BR
//! of the bottom face to those of the top face. The side faces are
//! `N = (z00, c_T, c_B, z01)`, `W = (a_B, z10, z00, a_T)`,
//! `E = (d_B, z11, z01, d_T)` and `S = (z10, b_T, b_B, z11)`, written as
//! `(a, b, c, d)`.

use rand::Rng;

use super::lambda::{LSq, Lambda};
use super::{compose_array, DgError, DoubleGroupoid};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeShell<S> {
    pub bottom: S,
    pub top: S,
    pub north: S,
    pub west: S,
    pub east: S,
    pub south: S,
}

/// The twelve edge equations.
pub fn check_shell<D: DoubleGroupoid>(d: &D, s: &CubeShell<D::Sq>) -> Result<(), DgError> {
    let [ba, bb, bc, bd] = d.faces(&s.bottom);
    let [ta, tb, tc, td] = d.faces(&s.top);
    let n = d.faces(&s.north);
    let w = d.faces(&s.west);
    let e = d.faces(&s.east);
    let so = d.faces(&s.south);
    let eqs = [
        ("N.a = W.c", n[0] == w[2]),
        ("N.d = E.c", n[3] == e[2]),
        ("S.a = W.b", so[0] == w[1]),
        ("S.d = E.b", so[3] == e[1]),
        ("N.c = B.c", n[2] == bc),
        ("N.b = T.c", n[1] == tc),
        ("W.a = B.a", w[0] == ba),
        ("W.d = T.a", w[3] == ta),
        ("E.a = B.d", e[0] == bd),
        ("E.d = T.d", e[3] == td),
        ("S.c = B.b", so[2] == bb),
        ("S.b = T.b", so[1] == tb),
    ];
    match eqs.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(DgError::BadShell(name.to_string())),
        None => Ok(()),
    }
}

/// The five faces other than the top, folded flat, with connections in the corners.
pub fn fold_five<D: DoubleGroupoid>(d: &D, s: &CubeShell<D::Sq>) -> Result<D::Sq, DgError> {
    check_shell(d, s)?;
    fold_sides(d, s)
}

fn fold_sides<D: DoubleGroupoid>(d: &D, s: &CubeShell<D::Sq>) -> Result<D::Sq, DgError> {
    let g = d.edges();
    let n = d.faces(&s.north);
    let so = d.faces(&s.south);
    let (z00, z01, z10, z11) = (n[0], n[3], so[0], so[3]);
    let arr = vec![
        vec![d.gamma_minus(g.inv(z00)), d.inv1(&s.north), d.corner_upper(g.inv(z01))],
        vec![d.inv2(&s.west), s.bottom.clone(), s.east.clone()],
        vec![d.corner_lower(z10), s.south.clone(), d.gamma_plus(z11)],
    ];
    compose_array(d, &arr)
}

pub fn cube_commutative<D: DoubleGroupoid>(d: &D, s: &CubeShell<D::Sq>) -> Result<bool, DgError> {
    Ok(fold_five(d, s)? == s.top)
}

/// Identity cube on `s` in direction `dir`: `s` is the bottom and top
/// (3), the north and south faces (1), or the west and east faces (2).
pub fn degenerate_cube<D: DoubleGroupoid>(d: &D, dir: u8, s: &D::Sq) -> CubeShell<D::Sq> {
    let [a, b, c, e] = d.faces(s);
    match dir {
        1 => CubeShell { bottom: d.eps1(c), top: d.eps1(b), north: s.clone(), south: s.clone(), west: d.eps1(a), east: d.eps1(e) },
        2 => CubeShell { bottom: d.eps2(a), top: d.eps2(e), north: d.eps2(c), south: d.eps2(b), west: s.clone(), east: s.clone() },
        _ => CubeShell { bottom: s.clone(), top: s.clone(), north: d.eps1(c), south: d.eps1(b), west: d.eps2(a), east: d.eps2(e) },
    }
}

fn mismatch() -> DgError {
    DgError::BadShell("cubes do not share the matching face".into())
}

/// Direction 3 stacks `y` on top of `x`; 1 puts `y` south of `x`; 2 puts `y` east of `x`.
pub fn compose_cubes<D: DoubleGroupoid>(d: &D, dir: u8, x: &CubeShell<D::Sq>, y: &CubeShell<D::Sq>) -> Result<CubeShell<D::Sq>, DgError> {
    check_shell(d, x)?;
    check_shell(d, y)?;
    let c1 = |p: &D::Sq, q: &D::Sq| d.compose1(p, q).ok_or_else(mismatch);
    let c2 = |p: &D::Sq, q: &D::Sq| d.compose2(p, q).ok_or_else(mismatch);
    let out = match dir {
        3 => {
            if x.top != y.bottom {
                return Err(mismatch());
            }
            CubeShell {
                bottom: x.bottom.clone(),
                top: y.top.clone(),
                north: c1(&x.north, &y.north)?,
                south: c1(&x.south, &y.south)?,
                west: c2(&x.west, &y.west)?,
                east: c2(&x.east, &y.east)?,
            }
        }
        1 => {
            if x.south != y.north {
                return Err(mismatch());
            }
            CubeShell {
                bottom: c1(&x.bottom, &y.bottom)?,
                top: c1(&x.top, &y.top)?,
                north: x.north.clone(),
                south: y.south.clone(),
                west: c1(&x.west, &y.west)?,
                east: c1(&x.east, &y.east)?,
            }
        }
        2 => {
            if x.east != y.west {
                return Err(mismatch());
            }
            CubeShell {
                bottom: c2(&x.bottom, &y.bottom)?,
                top: c2(&x.top, &y.top)?,
                north: c2(&x.north, &y.north)?,
                south: c2(&x.south, &y.south)?,
                west: x.west.clone(),
                east: y.east.clone(),
            }
        }
        _ => return Err(DgError::BadShell(format!("no direction {}", dir))),
    };
    check_shell(d, &out)?;
    Ok(out)
}

/// The commutative cube over `bottom` with vertical edges `z = [z00, z01, z10, z11]`
/// and side interiors `n = [N, W, E, S]`; the top is the folded composite.
pub fn fill_cube(l: &Lambda, bottom: LSq, z: [usize; 4], n: [usize; 4]) -> Option<CubeShell<LSq>> {
    let [ba, bb, bc, bd] = bottom.e;
    let [z00, z01, z10, z11] = z;
    let north = l.solve_b(n[0], z00, bc, z01)?;
    let west = l.solve_d(n[1], ba, z10, z00)?;
    let east = l.solve_d(n[2], bd, z11, z01)?;
    let south = l.solve_b(n[3], z10, bb, z11)?;
    let mut s = CubeShell { bottom, top: bottom, north, west, east, south };
    s.top = fold_sides(l, &s).ok()?;
    check_shell(l, &s).ok()?;
    Some(s)
}

fn pick<R: Rng>(rng: &mut R, n: usize) -> usize {
    rng.gen_range(0..n)
}

/// Random commutative cube over a one-object `λX`.
pub fn random_cube<R: Rng>(l: &Lambda, rng: &mut R) -> CubeShell<LSq> {
    assert!(l.x.base.is_one_object());
    let np = l.x.base.arrow_count();
    let nm = l.x.groups[0].order();
    let b = l.solve_d(pick(rng, nm), pick(rng, np), pick(rng, np), pick(rng, np)).unwrap();
    let z = [0; 4].map(|_| pick(rng, np));
    let n = [0; 4].map(|_| pick(rng, nm));
    fill_cube(l, b, z, n).unwrap()
}

/// A random commutative cube composable with `x` in direction `dir`.
pub fn random_partner<R: Rng>(l: &Lambda, rng: &mut R, dir: u8, x: &CubeShell<LSq>) -> CubeShell<LSq> {
    let np = l.x.base.arrow_count();
    let nm = l.x.groups[0].order();
    let mut r4 = || [0; 4].map(|_| pick(rng, nm));
    let mut n = r4();
    match dir {
        3 => {
            let z = [0; 4].map(|_| pick(rng, np));
            fill_cube(l, x.top, z, n).unwrap()
        }
        1 => {
            // shares x's south face as its north face
            let s = x.south;
            let b = l.solve_d(pick(rng, nm), pick(rng, np), pick(rng, np), x.bottom.e[1]).unwrap();
            n[0] = s.n;
            let z = [s.e[0], s.e[3], pick(rng, np), pick(rng, np)];
            fill_cube(l, b, z, n).unwrap()
        }
        _ => {
            let e = x.east;
            let b = l.solve_d(pick(rng, nm), x.bottom.e[3], pick(rng, np), pick(rng, np)).unwrap();
            n[1] = e.n;
            let z = [e.e[2], pick(rng, np), e.e[1], pick(rng, np)];
            fill_cube(l, b, z, n).unwrap()
        }
    }
}
