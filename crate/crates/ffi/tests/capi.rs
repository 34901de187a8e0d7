use std::ffi::{CStr, CString};
use std::ptr;

use prestar_ffi::*;

const SAMPLE: &str = "A -> a | B B\nB -> A B | b\n";
const SAMPLE_AUT: &str = "states: q0 q1 q2\ninitial: q0\nfinal: q2\nq0 a q1\nq1 b q2\nq2 a q1\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn grammar(text: &str) -> *mut PrestarGrammar {
    let mut g = ptr::null_mut();
    let src = c(text);
    assert_eq!(
        unsafe { prestar_grammar_parse(src.as_ptr(), &mut g) },
        PrestarStatus::Ok
    );
    g
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { prestar_string_free(s) };
    out
}

fn last_error() -> String {
    let p = prestar_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn membership_and_start() {
    let g = grammar(SAMPLE);
    let w = c("a b");
    let mut yes = true;
    assert_eq!(
        unsafe { prestar_member(g, w.as_ptr(), &mut yes) },
        PrestarStatus::Ok
    );
    assert!(!yes);
    let b = c("B");
    assert_eq!(
        unsafe { prestar_grammar_set_start(g, b.as_ptr()) },
        PrestarStatus::Ok
    );
    assert_eq!(
        unsafe { prestar_member(g, w.as_ptr(), &mut yes) },
        PrestarStatus::Ok
    );
    assert!(yes);
    let bad = c("Z");
    assert_eq!(
        unsafe { prestar_grammar_set_start(g, bad.as_ptr()) },
        PrestarStatus::UnknownSymbol
    );
    assert!(last_error().contains('Z'));

    let mut tree = ptr::null_mut();
    assert_eq!(
        unsafe { prestar_parse(g, w.as_ptr(), &mut tree) },
        PrestarStatus::Ok
    );
    assert_eq!(take(tree), "B -> A B\n  A -> a\n  B -> b\n");
    let no = c("a");
    assert_eq!(
        unsafe { prestar_parse(g, no.as_ptr(), &mut tree) },
        PrestarStatus::NotInLanguage
    );
    unsafe { prestar_grammar_free(g) };
}

#[test]
fn errors_and_null_pointers() {
    let mut g = ptr::null_mut();
    let src = c("S -> a\nS a\n");
    assert_eq!(
        unsafe { prestar_grammar_parse(src.as_ptr(), &mut g) },
        PrestarStatus::Syntax
    );
    assert!(last_error().starts_with("line 2"));
    assert!(g.is_null());
    assert_eq!(
        unsafe { prestar_grammar_parse(ptr::null(), &mut g) },
        PrestarStatus::NullPointer
    );
    let ok = c("S -> a");
    assert_eq!(
        unsafe { prestar_grammar_parse(ok.as_ptr(), ptr::null_mut()) },
        PrestarStatus::NullPointer
    );
    let bytes = [0xffu8, 0];
    assert_eq!(
        unsafe { prestar_grammar_parse(bytes.as_ptr().cast(), &mut g) },
        PrestarStatus::InvalidUtf8
    );
    let mut b = false;
    assert_eq!(
        unsafe { prestar_is_empty(ptr::null(), &mut b) },
        PrestarStatus::NullPointer
    );
    unsafe {
        prestar_grammar_free(ptr::null_mut());
        prestar_string_free(ptr::null_mut());
    }
    // success clears the message
    let g = grammar("S -> a");
    assert!(prestar_last_error().is_null());
    unsafe { prestar_grammar_free(g) };
}

#[test]
fn set_queries_and_booleans() {
    let g = grammar("S -> A B | a S\nA -> eps\nB -> eps\nC -> c\n");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { prestar_nullable(g, &mut out) }, PrestarStatus::Ok);
    assert_eq!(take(out), "A\nB\nS\n");
    assert_eq!(unsafe { prestar_useless(g, &mut out) }, PrestarStatus::Ok);
    assert_eq!(take(out), "C\n");
    assert_eq!(
        unsafe { prestar_productive(g, &mut out) },
        PrestarStatus::Ok
    );
    assert_eq!(take(out), "A\nB\nC\nS\n");
    assert_eq!(unsafe { prestar_reachable(g, &mut out) }, PrestarStatus::Ok);
    assert_eq!(take(out), "A\nB\nS\n");
    let (mut empty, mut finite) = (true, true);
    assert_eq!(
        unsafe { prestar_is_empty(g, &mut empty) },
        PrestarStatus::Ok
    );
    assert_eq!(
        unsafe { prestar_is_finite(g, &mut finite) },
        PrestarStatus::Ok
    );
    assert!(!empty && !finite);
    assert_eq!(
        unsafe { prestar_grammar_render(g, &mut out) },
        PrestarStatus::Ok
    );
    assert!(take(out).starts_with("start: S\n"));
    unsafe { prestar_grammar_free(g) };
}

#[test]
fn saturation_round_trip() {
    let g = grammar(SAMPLE);
    let mut a = ptr::null_mut();
    let src = c(SAMPLE_AUT);
    assert_eq!(
        unsafe { prestar_automaton_parse(g, src.as_ptr(), &mut a) },
        PrestarStatus::Ok
    );
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { prestar_saturate(g, a, &mut s) }, PrestarStatus::Ok);
    let mut counters = PrestarCounters::default();
    assert_eq!(
        unsafe { prestar_saturated_counters(s, &mut counters) },
        PrestarStatus::Ok
    );
    assert_eq!(counters.adds, 8);
    let mut n = 0usize;
    assert_eq!(
        unsafe { prestar_saturated_transition_count(s, &mut n) },
        PrestarStatus::Ok
    );
    assert_eq!(n, 11);
    let mut accepted = false;
    let form = c("A A");
    assert_eq!(
        unsafe { prestar_saturated_accepts(s, form.as_ptr(), &mut accepted) },
        PrestarStatus::Ok
    );
    assert!(accepted);
    let form = c("a a");
    assert_eq!(
        unsafe { prestar_saturated_accepts(s, form.as_ptr(), &mut accepted) },
        PrestarStatus::Ok
    );
    assert!(!accepted);
    let form = c("nope");
    assert_eq!(
        unsafe { prestar_saturated_accepts(s, form.as_ptr(), &mut accepted) },
        PrestarStatus::UnknownSymbol
    );
    let mut dot = ptr::null_mut();
    assert_eq!(
        unsafe { prestar_saturated_dot(s, &mut dot) },
        PrestarStatus::Ok
    );
    let dot = take(dot);
    assert_eq!(dot.matches(" -> ").count(), 11);
    assert_eq!(dot.matches("style=dashed").count(), 8);
    unsafe {
        prestar_saturated_free(s);
        prestar_automaton_free(a);
        prestar_grammar_free(g);
    }
}

#[test]
fn containment_and_limits() {
    let g = grammar("S -> b a\n");
    let l = c("states: p q\ninitial: p\nfinal: p q\np a p\np b q\nq b q\n");
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { prestar_automaton_parse(g, l.as_ptr(), &mut a) },
        PrestarStatus::Ok
    );
    let mut yes = true;
    assert_eq!(
        unsafe { prestar_contained(g, a, false, 1 << 16, &mut yes) },
        PrestarStatus::Ok
    );
    assert!(!yes);
    assert_eq!(
        unsafe { prestar_contained(g, a, false, 1, &mut yes) },
        PrestarStatus::ResourceLimit
    );
    unsafe { prestar_automaton_free(a) };

    let bad = c("states: p\ninitial: p\np eps p\n");
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { prestar_automaton_parse(g, bad.as_ptr(), &mut a) },
        PrestarStatus::Syntax
    );
    assert!(last_error().starts_with("line 3"));
    unsafe { prestar_grammar_free(g) };
}
