#pragma once

#include <stdexcept>
#include <string>

namespace kpm {

enum class Errc {
    malformed_set,
    touches_residue,
    dimension_mismatch,
    budget_exceeded,
    unequal_parts,
    precondition_violated,
    malformed_input,
    invalid_certificate,
    same_part_violation,
    too_many_classes,
    selection_failed,
    degree_too_low,
    not_closed,
    condition_not_met,
    no_perfect_matching,
    family_construction_failed,
    empty_part,
    parse_error,
    duplicate_edge,
    out_of_range,
    pipeline_failed,
    stage_failed,
    usage,
    internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// A pipeline stage could not complete on this instance.  Carries the stage
// identifier so callers never see a silent failure.
class StageFailed : public Error {
public:
    StageFailed(const std::string& stage, const std::string& detail)
        : Error(Errc::stage_failed, stage + ": " + detail), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

class ParseFailure : public Error {
public:
    ParseFailure(Errc code, int line, const std::string& detail)
        : Error(code, "line " + std::to_string(line) + ": " + detail), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace kpm
