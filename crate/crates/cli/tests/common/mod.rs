use std::path::PathBuf;
use std::process::{Command, Output};

/// Golden file name and the arguments that reproduce it.
pub const GOLDEN: &[(&str, &[&str])] = &[
    (
        "exists_2_degree_2.txt",
        &["exists", "--type", "|2", "--degree", "2"],
    ),
    (
        "exists_2_degree_3.txt",
        &["exists", "--type", "|2", "--degree", "3"],
    ),
    (
        "classify_2_transposition.txt",
        &["classify", "--type", "|2", "--monodromy", "(1 2)"],
    ),
    (
        "classify_6_mixed.txt",
        &["classify", "--type", "|6", "--monodromy", "(1 2)(3 4 5)"],
    ),
    (
        "classify_2_identity.txt",
        &["classify", "--type", "|2", "--monodromy", "id:4"],
    ),
    (
        "cohomology_q.txt",
        &["cohomology", "--type", "|2", "--coeff", "Q", "--stages", "10"],
    ),
    (
        "cohomology_z_gens.txt",
        &["cohomology", "--type", "|2", "--coeff", "Z", "--gens", "1/2,1/4"],
    ),
    (
        "cohomology_z_trivial.txt",
        &["cohomology", "--type", "|2", "--coeff", "Z"],
    ),
    (
        "exists_prefix_verify.txt",
        &["exists", "--type", "6,6|5", "--degree", "6", "--verify", "8"],
    ),
    (
        "classify_6_verify.txt",
        &[
            "classify",
            "--type",
            "|6",
            "--monodromy",
            "(1 2)(3 4 5)",
            "--verify",
            "6",
        ],
    ),
    ("equiv.txt", &["equiv", "--left", "6|10", "--right", "2|30"]),
    (
        "oracle.txt",
        &["oracle", "--type", "|2", "--monodromy", "(1 2)", "--stage", "3"],
    ),
];

/// Inputs that must be rejected with status 1.
pub const MALFORMED: &[&[&str]] = &[
    &["exists", "--type", "|2", "--degree", "0"],
    &["exists", "--type", "|2", "--degree", "-1"],
    &["exists", "--type", "2,3", "--degree", "2"],
    &["exists", "--type", "|1", "--degree", "2"],
    &["exists", "--type", "|", "--degree", "2"],
    &["classify", "--type", "|2", "--monodromy", "(1 2)(2 3)"],
    &["classify", "--type", "|2", "--monodromy", "(1 2"],
    &["classify", "--type", "|2", "--monodromy", "(0 1)"],
    &["cohomology", "--type", "|2", "--coeff", "Z", "--gens", "1/3"],
    &[
        "cohomology",
        "--type",
        "|2",
        "--coeff",
        "Z",
        "--stages",
        "1",
        "--gens",
        "1/4",
    ],
    &["cohomology", "--type", "|2", "--coeff", "Q"],
    &[
        "cohomology",
        "--type",
        "|2",
        "--coeff",
        "Q",
        "--stages",
        "4",
        "--gens",
        "1/2",
    ],
    &["cohomology", "--type", "2,3|", "--coeff", "Z"],
    &["equiv", "--left", "2|", "--right", "|2"],
    &["oracle", "--type", "2|", "--monodromy", "(1 2)", "--stage", "5"],
    &["--format", "json", "exists", "--type", "|2", "--degree", "2"],
    &["frobnicate"],
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solenoid"))
        .args(args)
        .output()
        .expect("spawn solenoid")
}
