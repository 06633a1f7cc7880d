//! Reference matrices with known properties.

use crate::bitcore::BinMatrix;
use crate::exact::{rat, ExactMatrix, ExactVector};

fn m(rows: &[&str]) -> BinMatrix {
    BinMatrix::parse(&rows.join("\n")).expect("fixture matrix parses")
}

/// Four representations of one tetrahedron in `I^3`.
pub fn tetra_reps_3() -> [BinMatrix; 4] {
    [
        m(&["001", "110", "100"]),
        m(&["110", "010", "001"]),
        m(&["101", "010", "001"]),
        m(&["011", "010", "111"]),
    ]
}

/// Regular tetrahedron in `I^3`.
pub fn regular_3() -> BinMatrix {
    m(&["110", "101", "011"])
}

/// Corner simplex, the identity representation.
pub fn corner(n: usize) -> BinMatrix {
    BinMatrix::identity(n)
}

/// Path simplex `0, e_1, e_1 + e_2, ...`: ones on and above the diagonal.
pub fn path(n: usize) -> BinMatrix {
    let rows: Vec<u64> = (0..n)
        .map(|i| crate::bitcore::mask(n) & !crate::bitcore::mask(i))
        .collect();
    BinMatrix::from_row_bits(n, n, rows).expect("path fixture")
}

/// Acute 7-simplex; its transpose is not acute.
pub fn acute_7() -> BinMatrix {
    m(&[
        "1110011", "1001100", "0101100", "0011110", "0011101", "0001011", "0000111",
    ])
}

pub fn acute_7_transposed_inverse() -> ExactMatrix {
    ExactMatrix::scaled(
        13,
        &[
            &[4, 4, 3, -2, -2, 1, 1],
            &[9, -4, -3, 2, 2, -1, -1],
            &[-4, 9, -3, 2, 2, -1, -1],
            &[-2, -2, 5, 1, 1, 6, -7],
            &[-2, -2, 5, 1, 1, -7, 6],
            &[-1, -1, -4, 7, -6, 3, 3],
            &[-1, -1, -4, -6, 7, 3, 3],
        ],
    )
}

/// Nonobtuse, not acute, partly decomposable 7-simplex.
pub fn nonobtuse_partly_7() -> BinMatrix {
    m(&[
        "1100111", "0100111", "0011000", "0001000", "0000110", "0000101", "0000011",
    ])
}

pub fn nonobtuse_partly_7_transposed_inverse() -> ExactMatrix {
    ExactMatrix::scaled(
        2,
        &[
            &[2, 0, 0, 0, 0, 0, 0],
            &[-2, 2, 0, 0, 0, 0, 0],
            &[0, 0, 2, 0, 0, 0, 0],
            &[0, 0, -2, 2, 0, 0, 0],
            &[0, -1, 0, 0, 1, 1, -1],
            &[0, -1, 0, 0, 1, -1, 1],
            &[0, -1, 0, 0, -1, 1, 1],
        ],
    )
}

/// Representations visited while block-diagonalizing [`nonobtuse_partly_7`]:
/// reflect column 1, swap rows 0 and 1, reflect column 5, then swap columns
/// 1, 5 and rows 0, 1. The last one equals reflecting column 5 of the start.
pub fn block_diagonal_sequence_7() -> [BinMatrix; 4] {
    [
        m(&[
            "0111000", "1111000", "0011000", "0001000", "0000110", "0000101", "0000011",
        ]),
        m(&[
            "1111000", "0111000", "0011000", "0001000", "0000110", "0000101", "0000011",
        ]),
        m(&[
            "1111000", "0111000", "0011000", "0001000", "1111011", "0000101", "1111110",
        ]),
        m(&[
            "0011010", "1011010", "0011000", "0001000", "1111011", "0000101", "1111110",
        ]),
    ]
}

/// Nonobtuse complex of three mutually orthogonal components (3, 1, 4).
pub fn complex_8() -> BinMatrix {
    m(&[
        "11000000", "10100000", "01100000", "00011111", "00001110", "00001101", "00001011",
        "00000111",
    ])
}

/// Fully indecomposable nonobtuse 9-simplex that is not acute.
pub fn nonacute_fi_9() -> BinMatrix {
    m(&[
        "110011110",
        "101110011",
        "101101101",
        "011110101",
        "011101011",
        "001111110",
        "001011001",
        "001000111",
        "000111111",
    ])
}

pub fn nonacute_fi_9_transposed_inverse() -> ExactMatrix {
    ExactMatrix::scaled(
        20,
        &[
            &[6, 6, -2, -6, 2, 2, 2, 2, -2],
            &[7, -3, 1, 3, 4, -6, -6, 4, 1],
            &[7, -3, 1, 3, -6, 4, 4, -6, 1],
            &[-3, 7, 1, 3, 4, -6, 4, -6, 1],
            &[-3, 7, 1, 3, -6, 4, -6, 4, 1],
            &[-4, -4, 8, 4, 2, 2, 2, 2, -12],
            &[-2, -2, 4, -8, 6, 6, -4, -4, 4],
            &[-2, -2, 4, -8, -4, -4, 6, 6, 4],
            &[-4, -4, -12, 4, 2, 2, 2, 2, 8],
        ],
    )
}

/// Normal to the facet opposite the origin of [`nonacute_fi_9`].
pub fn nonacute_fi_9_origin_normal() -> ExactVector {
    [10, 5, 5, 5, 5, 0, 0, 0, 0]
        .iter()
        .map(|&x| rat(x, 20))
        .collect()
}

/// Obtuse 5-simplex whose origin facet has four altitude feet from cube
/// vertices landing on it.
pub fn projection_5() -> BinMatrix {
    m(&["11100", "11010", "10001", "00110", "01101"])
}

pub fn projection_5_origin_normal() -> ExactVector {
    [0, 1, 1, 1, 1].iter().map(|&x| rat(x, 2)).collect()
}

/// Zero diagonal, ones elsewhere.
pub fn hollow_3() -> BinMatrix {
    m(&["011", "101", "110"])
}

/// [`hollow_3`] with column 0 replaced by its antipode.
pub fn hollow_3_first_antipodal() -> BinMatrix {
    m(&["111", "001", "010"])
}
