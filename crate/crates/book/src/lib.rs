//! The guide's chapters, included so that their snippets run as doc-tests.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(numbers, "numbers.md");
chapter!(lotteries, "lotteries.md");
chapter!(acts, "acts.md");
chapter!(maximin, "maximin.md");
chapter!(postulates, "postulates.md");
chapter!(model_format, "model-format.md");
chapter!(cli, "cli.md");
