//! Presentation, tuple and word text formats.

use amalgam::classify::{example_group, example_tuple};
use amalgam::random::{random_ftype, random_group_word, random_raw_word, random_tuple, rng};
use amalgam::text::{
    format_document, format_presentation, format_raw, parse_document, parse_presentation, parse_word, parse_word_lines,
    Document,
};
use amalgam::Error;
use proptest::prelude::*;

fn position(e: Error) -> (usize, usize) {
    match e {
        Error::Parse { line, column, .. } => (line, column),
        other => panic!("not a parse error: {other:?}"),
    }
}

#[test]
fn ftype_and_factor_lines_agree() {
    let ft = "# comment\nftype: orders = 2 2 2 2 2 3 ; p = 3 ; U = a1 a2 a3 ; V = a4 a5 a6   # trailing\n";
    let g = parse_presentation(ft).unwrap();
    assert_eq!(g, example_group());
    assert_eq!(format_presentation(&g).lines().count(), 3);
    let inf = parse_presentation("factor H1: orders = inf 0\nfactor H2: orders = 3\npinch: u = a1 a2 ; v = a3\n");
    assert!(inf.is_err(), "a3 has finite order");
    let free = parse_presentation("factor H1: orders = inf inf\nfactor H2: orders = 0\npinch: u = a1 a2 ; v = a3^2\n");
    assert!(free.is_ok());
}

#[test]
fn parse_errors_name_line_and_column() {
    assert_eq!(
        position(parse_presentation("factor H1: orders = 2 1\n").unwrap_err()),
        (1, 23)
    );
    let text = "factor H1: orders = 2 2 2\nfactor H2: orders = 2 2 3\npinch: u = a1 a2 a3 ; v = a6^2 a5 x4\n";
    assert_eq!(position(parse_presentation(text).unwrap_err()).0, 3);
    let missing = "factor H1: orders = 2 2 2\n";
    assert!(parse_presentation(missing).is_err());
    let doc = "gen: a1 a2\nbogus line\n";
    assert_eq!(
        position(parse_document(doc, Some(&example_group())).unwrap_err()),
        (2, 1)
    );
    assert_eq!(
        position(parse_word_lines("a1\n\na1 a9\n", &example_group()).unwrap_err()).0,
        3
    );
}

#[test]
fn documents_split_tuples_on_blank_lines() {
    let g = example_group();
    let text = "gen: a1 a2\ngen: a1 a3\n# not a separator\ngen: a1 a4\n\n\ngen: a1 a5\n";
    let doc = parse_document(text, Some(&g)).unwrap();
    assert_eq!(doc.tuples.iter().map(|t| t.len()).collect::<Vec<_>>(), vec![3, 1]);
    let doc = Document {
        presentation: g.clone(),
        tuples: vec![example_tuple(&g)],
    };
    assert_eq!(parse_document(&format_document(&doc), None).unwrap(), doc);
}

#[test]
fn word_lines() {
    let g = example_group();
    let ws = parse_word_lines("a1 a2 a3\n# u\n1\na6^2 a5 a4\n", &g).unwrap();
    assert_eq!(ws.len(), 3);
    assert!(g.equal(&ws[0], &ws[2]));
    assert!(ws[1].is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raw_words_round_trip(seed in any::<u64>()) {
        let g = example_group();
        let raw = random_raw_word(&g, 8, &mut rng(seed, 0));
        prop_assert_eq!(parse_word(&format_raw(&raw)).unwrap(), raw);
    }

    #[test]
    fn group_words_round_trip(seed in any::<u64>()) {
        let g = example_group();
        let w = random_group_word(&g, 6, &mut rng(seed, 1));
        let back = parse_word_lines(&w.to_string(), &g).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(&back[0], &w);
    }

    #[test]
    fn random_documents_round_trip(seed in 0u64..500) {
        let (_, g) = random_ftype(8, 0, &mut rng(seed, 2));
        prop_assert_eq!(parse_presentation(&format_presentation(&g)).unwrap(), g.clone());
        let mut r = rng(seed, 3);
        let doc = Document {
            tuples: (0..3).map(|_| random_tuple(&g, 3, 4, &mut r)).collect(),
            presentation: g,
        };
        prop_assert_eq!(parse_document(&format_document(&doc), None).unwrap(), doc);
    }
}
