//! Golden-file, exit-code and adapter tests for the command-line front end.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected outputs.

use std::path::PathBuf;

use pgideal::brieskorn::fermat_datum;
use pgideal::hilbert::parse_datum_file;
use pgideal::lattice::{self, parse_graph_file};
use pgideal::polyalg::{extended_rees_f, SparsePolynomial};
use pgideal_cli::{run, EXIT_BUDGET, EXIT_FALSE, EXIT_INPUT, EXIT_OK};

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    p.to_str().expect("utf-8 path").to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pgideal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 stdout"),
        String::from_utf8(err).expect("utf-8 stderr"),
    )
}

/// Splits an argument string, expanding `@name` to a data file path.
fn argv(command: &str) -> Vec<String> {
    command
        .split_whitespace()
        .map(|a| match a.strip_prefix('@') {
            Some(name) => data(name),
            None => a.to_string(),
        })
        .collect()
}

fn invoke_line(command: &str) -> (i32, String, String) {
    let args = argv(command);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    invoke(&refs)
}

const GOLDEN: &[(&str, &str)] = &[
    ("fermat4_table", "brieskorn fermat 4 --nmax 8"),
    ("fermat3_lines", "brieskorn fermat 3 --format lines"),
    ("brieskorn_pg", "brieskorn pg 2 3 13"),
    ("brieskorn_datum", "brieskorn datum 5"),
    ("e8_canonical", "graph canonical @ade_e8.graph"),
    ("e8_fundamental", "graph fundamental @ade_e8.graph"),
    ("e8_check_lines", "graph check @ade_e8.graph --format lines"),
    ("e8_antinef", "graph antinef @ade_e8.graph --cycle end"),
    (
        "e8_zperp_lines",
        "graph zperp @ade_e8.graph --cycle end --format lines",
    ),
    ("d4_rational", "graph rational @ade_d4.graph"),
    ("elliptic_rational", "graph rational @elliptic_chain.graph"),
    ("fermat4_graph_canonical", "graph canonical @fermat4.graph"),
    ("hilbert_coeffs", "hilbert coeffs @fermat.datum"),
    ("hilbert_pgtest", "hilbert pgtest @fermat.datum"),
    (
        "hilbert_pgtest_lines",
        "hilbert pgtest @fermat.datum --datum pgcycle --format lines",
    ),
    ("hilbert_colength", "hilbert colength @fermat.datum --n 3"),
    ("hilbert_n0", "hilbert n0 @fermat.datum"),
    ("hilbert_epsilon", "hilbert epsilon @fermat.datum --n 2"),
    (
        "hilbert_additivity",
        "hilbert additivity @fermat.datum --datum pgcycle --components 1",
    ),
    (
        "hilbert_multirees",
        "hilbert multirees @fermat.datum --datum fermat3",
    ),
    ("rees_present", "rees presentF x^2+y^3+z^7"),
    ("rees_r1_fail", "rees r1 X^2+Y^4*U^2+Z^5*U^3"),
    (
        "rees_r1_pass_lines",
        "rees r1 X^2+Y^3*U+Z^7*U^5 --format lines",
    ),
    ("rees_doublepoint", "rees doublepoint y^3+z^7"),
    ("rees_stability", "rees stability y^4+z^5"),
];

#[test]
fn golden_outputs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, command) in GOLDEN {
        let (_, out, _) = invoke_line(command);
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let want =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if want != out {
            mismatches.push(format!(
                "{name} ({command}):\n--- expected\n{want}--- got\n{out}"
            ));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&str, i32)] = &[
        ("brieskorn fermat 4", EXIT_OK),
        ("brieskorn pg 2 4 9", EXIT_OK),
        ("brieskorn pg 1 3 7", EXIT_INPUT),
        ("brieskorn fermat 1", EXIT_INPUT),
        ("brieskorn fermat", EXIT_INPUT),
        ("graph check @ade_e8.graph", EXIT_OK),
        ("graph check @affine_e8.graph", EXIT_INPUT),
        ("graph check @missing.graph", EXIT_INPUT),
        ("graph rational @ade_e8.graph", EXIT_OK),
        ("graph rational @elliptic_chain.graph", EXIT_FALSE),
        ("graph antinef @ade_e8.graph --cycle nope", EXIT_INPUT),
        ("graph zperp @fermat4.graph", EXIT_OK),
        ("graph canonical @fermat.datum", EXIT_INPUT),
        ("graph smooth @ade_e8.graph", EXIT_INPUT),
        ("hilbert pgtest @fermat.datum", EXIT_FALSE),
        ("hilbert pgtest @fermat.datum --datum pgcycle", EXIT_OK),
        ("hilbert colength @fermat.datum --n 0", EXIT_INPUT),
        ("hilbert coeffs @ade_e8.graph", EXIT_INPUT),
        ("hilbert multirees @fermat.datum", EXIT_INPUT),
        (
            "hilbert multirees @fermat.datum --datum fermat3",
            EXIT_FALSE,
        ),
        (
            "hilbert additivity @fermat.datum --components 1",
            EXIT_FALSE,
        ),
        ("rees r1 X^2+Y^4*U^2+Z^5*U^3", EXIT_FALSE),
        ("rees r1 X^2+Y^3*U+Z^7*U^5", EXIT_OK),
        ("rees r1 X^2+w", EXIT_INPUT),
        ("rees presentF X^2+Y^3", EXIT_INPUT),
        ("rees doublepoint y^3+z^5", EXIT_OK),
        ("rees doublepoint y^4+z^9", EXIT_FALSE),
        ("rees doublepoint x*y+z^3", EXIT_INPUT),
        ("rees stability y^3+z^7 --D 3", EXIT_INPUT),
        ("rees stability y^3+z^7 --D 5", EXIT_OK),
        ("rees", EXIT_INPUT),
        ("bogus", EXIT_INPUT),
        ("--format json brieskorn fermat 3", EXIT_INPUT),
        ("--help", EXIT_OK),
    ];
    for (command, want) in cases {
        let (code, _, err) = invoke_line(command);
        assert_eq!(code, *want, "`{command}` exited {code}, stderr: {err}");
        if *want == EXIT_INPUT {
            assert!(!err.is_empty(), "`{command}` failed without a diagnostic");
        }
    }
}

#[test]
fn budget_errors_exit_three() {
    for flag in ["--max-basis=2", "--max-pairs=1"] {
        let (code, out, err) = invoke(&["rees", "r1", "X^2+Y^3*U+Z^7*U^5", flag]);
        assert_eq!(code, EXIT_BUDGET, "{flag}: {out}{err}");
        assert!(err.contains("budget"), "{flag}: {err}");
    }
}

#[test]
fn outputs_are_library_values() {
    let text = std::fs::read_to_string(data("fermat.datum")).unwrap();
    let file = parse_datum_file(&text).unwrap();
    let d = &file.data[0];
    let c = d.coefficients().unwrap();
    let (_, out, _) = invoke_line("hilbert coeffs @fermat.datum --format lines");
    let want = format!(
        "datum={}\ne0bar={}\ne1bar={}\ne2bar={}\n",
        d.label().unwrap(),
        c.e0bar,
        c.e1bar,
        c.e2bar
    );
    assert_eq!(out, want);

    let (_, out, _) = invoke_line("brieskorn datum 6");
    assert_eq!(out, format!("{}\n", fermat_datum(6).unwrap()));

    let f: SparsePolynomial = "x^2+y^4+z^9".parse().unwrap();
    let (_, out, _) = invoke_line("rees presentF x^2+y^4+z^9 --format lines");
    assert_eq!(out, format!("F={}\n", extended_rees_f(&f).unwrap()));

    let g = parse_graph_file(&std::fs::read_to_string(data("ade_d4.graph")).unwrap()).unwrap();
    let zf = lattice::fundamental_cycle(&g.graph).unwrap();
    let (_, out, _) = invoke_line("graph fundamental @ade_d4.graph --format lines");
    assert!(out.starts_with(&format!("cycle={}\n", zf.display_with(&g.graph))));
}

#[test]
fn lines_format_is_key_value() {
    for (_, command) in GOLDEN {
        let (_, out, _) = invoke_line(&format!("{command} --format lines"));
        for line in out.lines() {
            let (k, _) = line
                .split_once('=')
                .unwrap_or_else(|| panic!("`{command}`: bad line `{line}`"));
            assert!(
                !k.is_empty() && !k.contains(' '),
                "`{command}`: bad key in `{line}`"
            );
        }
    }
}
