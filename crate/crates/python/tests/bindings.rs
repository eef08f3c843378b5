use pyo3::prelude::*;
use pyo3::types::PyDict;

fn check(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "knotalg").unwrap();
        knotalg::knotalg(&m).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("knotalg", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            panic!("{e}");
        }
    });
}

#[test]
fn expressions() {
    check(
        r#"
b = knotalg.Expr("<<2> <-2>> <2> <-2>")
assert (b.components(), b.traced_components(), b.nullity()) == (3, 3, 3)
assert b.crossings == 8
assert knotalg.Expr("[3,7,16]") == knotalg.Expr.continued_fraction([3, 7, 16])
assert repr(knotalg.parse("O  O")) == 'Expr("O O")'
assert knotalg.Expr("2 <2> <-2>").opacity() == [(1, "opaque", 2), (2, "transparent", 1), (3, "transparent", 1)]
assert knotalg.Expr("P(2,3,5)").components() == 1
"#,
    );
}

#[test]
fn brackets() {
    check(
        r#"
t = knotalg.Expr("O O O")
assert t.bracket() == [(5, -1), (-3, -1), (-7, 1)]
assert t.bracket_str() == "-A^5 - A^-3 + A^-7"
import json
cube = json.loads(knotalg.Expr("O").cube_json())
assert [v["loops"] for v in cube["vertices"]] == [2, 1]
try:
    knotalg.Expr("3").bracket(max_crossings=2)
    raise AssertionError
except OverflowError:
    pass
"#,
    );
}

#[test]
fn fractions_and_tables() {
    check(
        r#"
assert knotalg.classify(355, 113) == "knot (O)"
assert knotalg.classify(5, 2) == "knot (V)"
assert knotalg.classify(18, 7) == "link (E)"
big = 2**80 + 1
assert knotalg.cf_fraction([big]) == (big, 1)
assert knotalg.continued_fraction(355, 113) == [3, 7, 16]
assert knotalg.cf_fraction([2, 0]) == (1, 0)
assert knotalg.classify(1, 2) == "knot (V)"
for args in [(0, 0), (1, 0), (-3, 2)]:
    try:
        knotalg.classify(*args)
        raise AssertionError(args)
    except ValueError:
        pass
rows = knotalg.enumerate(6)
assert ([2, 2, 2], (12, 5), "link", 2) in rows
assert len(rows) == len(set(tuple(r[0]) for r in rows))
assert knotalg.graph_nullity(2, [(0, 1)]) == 1
"#,
    );
}
