// Command-line driver. Reads a problem document (JSON) from a file or stdin,
// runs one of the four pipelines, prints the report on stdout. Exit code 0 on
// success, 2 when the engine gives up for a mathematical reason (caps
// exhausted, eigenvalue outside the field), 1 on bad input.

#include "ozc/errors.hpp"
#include "ozc/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

unsigned long env_ul(const char* name, unsigned long fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        return std::stoul(v);
    } catch (const std::exception&) {
        throw ozc::ParseError(std::string(name) + " must be a nonnegative integer, got \"" + v +
                              "\"");
    }
}

void emit_error(const std::string& type, const std::string& message) {
    ozc::Json j;
    j["error"] = type;
    j["message"] = message;
    std::cout << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Zariski closures of orbits under plane polynomial automorphisms"};
    app.require_subcommand(1);

    std::string input_path = "-";
    bool trace = false;
    unsigned long orbit_cap = 0, word_cap = 0, multdep_bound = 0;

    for (const char* name : {"factorize", "conjugate", "classify", "closure"}) {
        CLI::App* s = app.add_subcommand(name);
        s->add_option("input", input_path, "problem document; - reads stdin")->capture_default_str();
        s->add_option("--orbit-cap", orbit_cap, "orbit search cap (overrides the document)");
        s->add_option("--word-cap", word_cap, "word length cap (overrides the document)");
        s->add_option("--multdep-bound", multdep_bound,
                      "multiplicative relation bound (overrides the document)");
        s->add_flag("--trace", trace, "include the step-by-step certificate");
    }

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    try {
        ozc::ClosureConfig base;
        base.orbit_cap = env_ul("OZC_ORBIT_CAP", base.orbit_cap);
        base.word_cap = env_ul("OZC_WORD_CAP", base.word_cap);
        base.multdep_bound = env_ul("OZC_MULTDEP_BOUND", base.multdep_bound);

        std::stringstream buf;
        if (input_path == "-") {
            buf << std::cin.rdbuf();
        } else {
            std::ifstream in(input_path);
            if (!in) throw ozc::ParseError("cannot open " + input_path);
            buf << in.rdbuf();
        }

        ozc::Json doc;
        try {
            doc = ozc::Json::parse(buf.str());
        } catch (const ozc::Json::parse_error& e) {
            throw ozc::ParseError(std::string("invalid JSON: ") + e.what());
        }

        ozc::ProblemDocument problem = ozc::parse_document(doc, base);
        if (sub->count("--orbit-cap")) problem.config.orbit_cap = orbit_cap;
        if (sub->count("--word-cap")) problem.config.word_cap = word_cap;
        if (sub->count("--multdep-bound")) problem.config.multdep_bound = multdep_bound;

        std::cout << ozc::run(sub->get_name(), problem, trace).dump(2) << "\n";
        return 0;
    } catch (const ozc::Inconclusive& e) {
        emit_error("inconclusive", e.what());
        return 2;
    } catch (const ozc::EigenvalueOutsideField& e) {
        emit_error("eigenvalue outside field",
                   std::string(e.what()) + "; characteristic polynomial " + e.char_poly);
        return 2;
    } catch (const ozc::InternalVerificationFailure& e) {
        emit_error("internal verification failure", e.what());
        return 1;
    } catch (const ozc::Error& e) {
        emit_error("input error", e.what());
        return 1;
    } catch (const ozc::Json::exception& e) {
        emit_error("input error", e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error("error", e.what());
        return 1;
    }
}
