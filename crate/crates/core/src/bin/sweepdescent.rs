fn main() -> std::process::ExitCode {
    sweepdescent::cli::main()
}
