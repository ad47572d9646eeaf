use gammatrace::emit::{self, FormulaDocument, FormulaFormat, TableFormat};
use gammatrace_core::partitions::partition_count;
use gammatrace_core::solver::minimal_algorithm;
use gammatrace_core::{AlphaTable, Rational};

fn tables(n: usize) -> Vec<AlphaTable> {
    minimal_algorithm(n).unwrap().tables
}

#[test]
fn text_rows() {
    let t = &tables(2)[1];
    assert_eq!(emit::render_alpha_table(t, TableFormat::Text), "1+1  1/2\n2  -2/3\n");
}

#[test]
fn json_for_n1() {
    let t = &tables(1)[0];
    assert_eq!(
        emit::render_alpha_table(t, TableFormat::Json),
        "[{\"partition\":\"1\",\"alpha\":\"1\"}]\n"
    );
}

#[test]
fn csv_round_trip() {
    let all = tables(7);
    for t in &all {
        let text = emit::render_alpha_table(t, TableFormat::Csv);
        assert!(text.starts_with("n,partition,numerator,denominator\n"));
        assert_eq!(emit::parse_alpha_csv(&text).unwrap(), vec![t.clone()]);
    }
    let text = emit::render_alpha_tables(&all, TableFormat::Csv);
    assert_eq!(text.lines().count(), 1 + 44);
    assert_eq!(emit::parse_alpha_csv(&text).unwrap(), all);
}

#[test]
fn csv_rejects_bad_input() {
    assert!(emit::parse_alpha_csv("a,b,c,d\n").is_err());
    assert!(emit::parse_alpha_csv("n,partition,numerator,denominator\n2,1+1,1,2\n").is_err());
    assert!(emit::parse_alpha_csv("n,partition,numerator,denominator\n2,3,1,2\n").is_err());
    assert!(emit::parse_alpha_csv("n,partition,numerator,denominator\n1,1,1,0\n").is_err());
}

#[test]
fn multi_table_text_and_json() {
    let all = tables(2);
    assert_eq!(
        emit::render_alpha_tables(&all, TableFormat::Text),
        "n = 1\n1  1\n\nn = 2\n1+1  1/2\n2  -2/3\n"
    );
    let json: serde_json::Value = serde_json::from_str(&emit::render_alpha_tables(&all, TableFormat::Json)).unwrap();
    assert_eq!(json[1]["n"], 2);
    assert_eq!(json[1]["coefficients"][1]["alpha"], "-2/3");
}

#[test]
fn formula_text_n2() {
    let t = &tables(2)[1];
    assert_eq!(
        emit::render_formula(t, FormulaFormat::Text),
        "m * Σ_{⟨ijkl⟩} [ (-2/3)·<B_i B_j B_k B_l> + (1/2)·<B_i B_j><B_k B_l> ]\n"
    );
}

#[test]
fn formula_n1_single_term() {
    let t = &tables(1)[0];
    assert_eq!(
        emit::render_formula(t, FormulaFormat::Text),
        "m * Σ_{⟨ij⟩} [ (1)·<B_i B_j> ]\n"
    );
    assert_eq!(
        emit::render_formula(t, FormulaFormat::Latex),
        "m \\sum_{\\langle ij \\rangle} \\left[ \\langle B_{i} B_{j} \\rangle \\right]\n"
    );
}

#[test]
fn latex_n3_has_three_terms() {
    let t = &tables(3)[2];
    let latex = emit::render_formula(t, FormulaFormat::Latex);
    assert_eq!(latex.matches("\\langle B_{i_1}").count(), 3);
    assert!(latex.contains("\\sum_{\\langle i_1 \\cdots i_{6} \\rangle}"));
    assert!(latex.contains("\\frac{32}{45} \\langle B_{i_1} \\cdots B_{i_6} \\rangle - \\frac{2}{3}"));
}

#[test]
fn formula_json_schema() {
    let t = &tables(3)[2];
    let v: serde_json::Value = serde_json::from_str(&emit::render_formula(t, FormulaFormat::Json)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["overall_factor"], "m");
    assert_eq!(v["sum_over"], "distinct index assignments");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[1]["partition"], "2+1");
    assert_eq!(terms[1]["alpha"], "-2/3");
    assert_eq!(terms[1]["blocks"], serde_json::json!([4, 2]));
}

#[test]
fn documents_match_tables() {
    for t in tables(10) {
        let doc = FormulaDocument::from_table(&t);
        assert_eq!(doc.terms.len() as u128, partition_count(t.n()));
        for term in &doc.terms {
            assert_eq!(t.get(&term.partition), Some(&term.alpha));
            assert_eq!(term.blocks.iter().sum::<usize>(), 2 * t.n());
            let printed: Rational = term.alpha.to_string().parse().unwrap();
            assert_eq!(printed, term.alpha);
        }
        let text = emit::render_formula_document(&doc, FormulaFormat::Text);
        assert_eq!(text.matches(")·").count() as u128, partition_count(t.n()));
    }
}

#[test]
fn long_formulas_switch_to_numbered_indices() {
    let t = &tables(10)[9];
    let text = emit::render_formula(t, FormulaFormat::Text);
    assert!(text.starts_with("m * Σ_{⟨i1···i20⟩} [ "));
    assert!(text.contains("<B_i19 B_i20>"));
}
