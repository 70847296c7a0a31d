use std::path::PathBuf;

use fqc_core::circuit::unitary_of;
use fqc_core::dsl::{emit, parse, SourceFile};
use fqc_core::matrix::{dist_up_to_phase, ComplexMatrix};
use fqc_core::qft::qft_matrix;

fn circuits_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../circuits")
}

fn load(name: &str) -> ComplexMatrix {
    let src = SourceFile::load(&circuits_dir().join(name)).unwrap();
    unitary_of(&src.parse().unwrap())
}

fn close(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    dist_up_to_phase(a, b).unwrap().distance < 1e-10
}

#[test]
fn every_shipped_file_round_trips() {
    let mut count = 0;
    for entry in std::fs::read_dir(circuits_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "fqc") {
            let c = SourceFile::load(&path).unwrap().parse().unwrap();
            let text = emit(&c).unwrap();
            assert_eq!(parse(&text).unwrap(), c, "{}", path.display());
            count += 1;
        }
    }
    assert!(count >= 8);
}

#[test]
fn shipped_files_mean_what_they_say() {
    assert!(close(&load("bell_a.fqc"), &load("bell_c.fqc")));
    assert!(close(&load("qft3.fqc"), &qft_matrix(3).unwrap()));
    assert!(close(&load("qft3_macro.fqc"), &qft_matrix(3).unwrap()));
    let cx = ComplexMatrix::permutation(4, |x| if x & 1 == 1 { x ^ 2 } else { x });
    assert!(close(&load("qft_squared.fqc"), &cx));
    let toffoli = ComplexMatrix::permutation(8, |x| if x & 3 == 3 { x ^ 4 } else { x });
    assert!(
        load("toffoli_clifford_t.fqc")
            .max_abs_diff(&toffoli)
            .unwrap()
            < 1e-12
    );
    let anti = ComplexMatrix::permutation(8, |x| if x & 3 == 2 { x ^ 4 } else { x });
    assert_eq!(load("anti_control.fqc"), anti);
}
