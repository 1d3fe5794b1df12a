#pragma once

#include "gl3lab/verify.hpp"

#include "CLI11.hpp"

#include <functional>
#include <string>

// Every subcommand with its parameters, bound to the suite parameter structs.
struct Subcommands {
    gl3lab::verify::DeltaParams delta;
    gl3lab::verify::CharsumParams charsum;
    gl3lab::verify::NewtonParams newton;
    gl3lab::verify::StationaryParams stationary;
    gl3lab::verify::VoronoiParams voronoi;
    gl3lab::verify::AfeParams afe;
    gl3lab::verify::MomentParams moment;
    gl3lab::verify::DualityParams duality;
    std::string out;

    // registers the subcommands on app; the selected one fills `run`
    void attach(CLI::App& app);
    std::function<gl3lab::report::Run()> run;
    std::string name;
};
