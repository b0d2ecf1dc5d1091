//! Unital algebras read off a transversal triple (o, o', e).

use jordanlab::geometry::Geometry;
use jordanlab::linalg::Matrix;
use jordanlab::tangent::{associative_algebra_from_triple, format_vector, jordan_algebra_from_triple, jts_from_polarity, BasePair, Sign};

fn main() {
    let g: Geometry = "gras:Q:2+2".parse().unwrap();
    let base = BasePair::standard(&g, 2).unwrap();
    let r = g.ring().clone();
    let e = base.point(Sign::Plus, Matrix::identity(&r, 2).data());
    let aa = associative_algebra_from_triple(&g, base.o(), base.o2(), &e).unwrap();
    for (i, row) in aa.table().iter().enumerate() {
        let row: Vec<String> = row.iter().map(|v| format_vector(&r, v)).collect();
        println!("e{i} * e_j = {row:?}");
    }

    let ja = jordan_algebra_from_triple(&g, base.o(), base.o2(), &e).unwrap();
    let y: Vec<_> = [2, 1, 1, 1].iter().map(|&n| r.from_i64(n)).collect();
    println!("j(y) = {}", format_vector(&r, &ja.inverse(&y).unwrap()));

    let line: Geometry = "projline:Q".parse().unwrap();
    let p = jordanlab::geometry::ProjectiveMap::new(Matrix::from_i64(&r, &[&[0, 1], &[1, 0]])).unwrap();
    let ts = jts_from_polarity(&line, &p, &line.parse_point("0").unwrap()).unwrap();
    let (two, three) = (vec![r.from_i64(2)], vec![r.from_i64(3)]);
    println!("polarity triple system: Q(2)3 = {}", format_vector(&r, &ts.q(&two, &three)));
}
