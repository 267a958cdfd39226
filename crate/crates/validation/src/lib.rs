//! Holds the `acceptance` test target; run it with
//! `cargo test -p qstokes-validation --test acceptance`.
