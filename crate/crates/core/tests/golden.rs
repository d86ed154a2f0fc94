use qutrit_thermal::criteria::{realign, unrealign};
use qutrit_thermal::matrix::ComplexMatrix;
use qutrit_thermal::Complex64;

fn integer_matrix() -> ComplexMatrix {
    ComplexMatrix::from_fn(9, 9, |r, c| Complex64::new((r * 9 + c) as f64, 0.0))
}

fn golden() -> Vec<Vec<i64>> {
    include_str!("data/realign_golden.txt")
        .lines()
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn realigned_integer_matrix_matches_golden_vector() {
    let golden = golden();
    assert_eq!(golden.len(), 9);
    let r = realign(&integer_matrix(), 3).unwrap();
    assert_eq!((r.rows(), r.cols()), (9, 9));
    for (i, row) in golden.iter().enumerate() {
        assert_eq!(row.len(), 9);
        for (j, &want) in row.iter().enumerate() {
            let z = r[(i, j)];
            assert_eq!(z.im, 0.0);
            assert_eq!(z.re, want as f64, "entry ({i}, {j})");
        }
    }
    assert_eq!(unrealign(&r, 3).unwrap(), integer_matrix());
}
