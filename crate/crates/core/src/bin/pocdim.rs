fn main() {
    std::process::exit(pocdim::cli::run_from_env());
}
