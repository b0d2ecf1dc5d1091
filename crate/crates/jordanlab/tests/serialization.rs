use jordanlab::geometry::{Geometry, PointTable, ProjectiveMap};
use jordanlab::linalg::Matrix;
use jordanlab::report::{witness, CheckRecord, CheckReport, Mode, RunConfig};
use jordanlab::rings::Ring;
use jordanlab::serial::{deserialize, serialize, PointDoc, SerialError};
use jordanlab::tangent::{extract_pair, BasePair, QuadraticJordanPair};
use jordanlab::torsor::TernaryTable;

#[test]
fn ring_descriptors_round_trip() {
    for d in ["Z", "Q", "Fp:2", "Fp:101", "Zn:12", "Poly:Q[x,y]", "Poly:Fp:5[t]", "Weil:Fp:3[e^2]", "Weil:Q[d^4]"] {
        let r: Ring = d.parse().unwrap();
        assert_eq!(r.to_string(), d);
        assert_eq!(deserialize::<Ring>(&serialize(&r)).unwrap(), r, "{d}");
    }
}

#[test]
fn geometry_descriptors_round_trip() {
    for d in ["gras:Fp:3:4", "gras:Q:1+2", "projline:Fp:7", "projline:Weil:Q[e^2]"] {
        let g: Geometry = d.parse().unwrap();
        assert_eq!(g.to_string(), d);
        assert_eq!(deserialize::<Geometry>(&serialize(&g)).unwrap(), g);
    }
}

#[test]
fn every_point_of_a_small_grassmannian_round_trips() {
    let g: Geometry = "gras:Fp:2:3".parse().unwrap();
    let t = PointTable::new(&g).unwrap();
    for p in t.points() {
        let doc = PointDoc { geometry: g.clone(), point: p.clone() };
        let back: PointDoc = deserialize(&serialize(&doc)).unwrap();
        assert_eq!(back, doc);
    }
}

#[test]
fn non_canonical_basis_lands_on_canonical_form() {
    let g: Geometry = "gras:Q:3".parse().unwrap();
    let a = g.point_i64(&[&[2, 4, 0], &[0, 1, 1]]).unwrap();
    let b = g.point_i64(&[&[1, 3, 1], &[1, 2, 0]]).unwrap();
    assert_eq!(a, b);
    let doc = serialize(&PointDoc { geometry: g.clone(), point: a.clone() });
    assert_eq!(deserialize::<PointDoc>(&doc).unwrap().point, b);
}

#[test]
fn maps_pairs_and_tables_round_trip() {
    let r: Ring = "Fp:5".parse().unwrap();
    let f = ProjectiveMap::new(Matrix::from_i64(&r, &[&[2, 1], &[1, 1]])).unwrap();
    assert_eq!(deserialize::<ProjectiveMap>(&serialize(&f)).unwrap(), f);

    let g: Geometry = "gras:Q:2+2".parse().unwrap();
    let pair = extract_pair(&BasePair::standard(&g, 2).unwrap()).unwrap();
    let back: QuadraticJordanPair = deserialize(&serialize(&pair)).unwrap();
    assert_eq!(back.to_json(), pair.to_json());

    let t = TernaryTable::cyclic(4);
    assert_eq!(deserialize::<TernaryTable>(&serialize(&t)).unwrap(), t);
}

#[test]
fn report_with_witness_round_trips() {
    let mut rep = CheckReport::new(RunConfig::new("axioms jordan").with_geometry("projline:Fp:3").with_seed(9));
    rep.push(CheckRecord::new("A", "J^{xz}_a J^{uv}_a J^{xz}_a = J^{J(u)J(v)}_a", Mode::Random).fail_with(witness([("x", "0"), ("a", "inf"), ("z", "1")])));
    let back: CheckReport = deserialize(&serialize(&rep)).unwrap();
    assert_eq!(back, rep);
    assert_eq!(CheckReport::from_json(&rep.to_json()).unwrap(), rep);
}

#[test]
fn schema_mismatch_is_rejected() {
    let doc = serialize(&"Fp:3".parse::<Ring>().unwrap()).replace("\"schema_version\": 1", "\"schema_version\": 7");
    assert!(matches!(deserialize::<Ring>(&doc), Err(SerialError::Version(7))));
    let rep = CheckReport::new(RunConfig::new("census")).to_json().replace("\"schema_version\": 1", "\"schema_version\": 0");
    assert!(CheckReport::from_json(&rep).is_err());
}
