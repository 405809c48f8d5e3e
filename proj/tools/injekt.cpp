#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "injekt/constructions.hpp"
#include "injekt/json_io.hpp"
#include "injekt/suite.hpp"

using namespace injekt;

namespace {

// exit codes: 0 clean, 1 violation found, 2 input/usage error
constexpr int kClean = 0, kViolation = 1, kInputError = 2;

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    return out;
}

std::vector<Rat> parse_rats(const std::string& csv) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rat_from_string(item));
    return out;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

// --no-timestamp also drops wall-clock fields so reruns are byte-identical
void strip_timing(Json& j) {
    if (j.is_object()) {
        j.erase("elapsed_seconds");
        j.erase("seconds");
        for (auto& [k, v] : j.items()) strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_timing(v);
    }
}

void emit(const Json& j, const std::string& out_path, bool with_timestamp) {
    Json envelope = j;
    if (with_timestamp)
        envelope["timestamp"] = static_cast<long>(::time(nullptr));
    else
        strip_timing(envelope);
    if (out_path.empty()) {
        std::cout << envelope.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << envelope.dump(2) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"injekt: exact construction and verification of injective morphisms to small "
                 "projective spaces"};
    app.require_subcommand(1);

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "build a morphism family instance");
    std::string family, out_path, weights_s, dims_s, degrees_s, dvec_s;
    long n_arg = 0, d_arg = 0, k_arg = 0, m_arg = 0;
    bool has_n = false, has_d = false, has_k = false, has_m = false, list = false;
    construct->add_option("--family", family, "family id (see --list)");
    construct->add_flag("--list", list, "print the family table");
    construct->add_option("--weights", weights_s, "comma-separated weights");
    construct->add_option("--dims", dims_s, "comma-separated factor dimensions");
    construct->add_option("--degrees", degrees_s, "comma-separated degrees");
    construct->add_option("--dvec", dvec_s, "comma-separated power vector");
    construct->add_option("--n", n_arg)->each([&](const std::string&) { has_n = true; });
    construct->add_option("--d", d_arg)->each([&](const std::string&) { has_d = true; });
    construct->add_option("--k", k_arg)->each([&](const std::string&) { has_k = true; });
    construct->add_option("--m", m_arg)->each([&](const std::string&) { has_m = true; });
    construct->add_option("--out", out_path, "output morphism JSON path");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "collision search (and decoder round trips)");
    std::string morphism_path, report_path;
    uint64_t trials = 10000, seed = 0;
    long height = 100;
    bool no_timestamp = false;
    verify->add_option("--morphism", morphism_path)->required();
    verify->add_option("--trials", trials);
    verify->add_option("--seed", seed);
    verify->add_option("--height", height);
    verify->add_option("--report", report_path);
    verify->add_flag("--no-timestamp", no_timestamp);

    // ---- decode ----
    auto* dec = app.add_subcommand("decode", "apply a morphism's decoder to an image point");
    std::string image_s;
    dec->add_option("--morphism", morphism_path)->required();
    dec->add_option("--image", image_s, "comma-separated image coordinates")->required();

    // ---- rank2 ----
    auto* rank2 = app.add_subcommand("rank2", "rank decision for a 2x2x(m+1) tensor");
    std::string tensor_path;
    rank2->add_option("--tensor", tensor_path)->required();

    // ---- secant-curve ----
    auto* sec = app.add_subcommand("secant-curve", "secant-through-point test for a curve in P^3");
    std::string curve_path, point_s, mode_s = "rational", primes_s;
    sec->add_option("--curve", curve_path)->required();
    sec->add_option("--point", point_s)->required();
    sec->add_option("--mode", mode_s, "rational | modular");
    sec->add_option("--primes", primes_s, "override evidence primes");
    sec->add_option("--report", report_path);
    sec->add_flag("--no-timestamp", no_timestamp);

    // ---- gadget ----
    auto* gad = app.add_subcommand("gadget", "graph-gadget subspace checks");
    long gadget_m = 1;
    std::string check = "all";
    uint64_t gtrials = 1000;
    gad->add_option("--m", gadget_m)->required();
    gad->add_option("--check", check, "all | flatten | subspace | annihilation");
    gad->add_option("--trials", gtrials);
    gad->add_option("--seed", seed);
    gad->add_option("--report", report_path);
    gad->add_flag("--no-timestamp", no_timestamp);

    // ---- sepinv ----
    auto* sep = app.add_subcommand("sepinv", "separating-invariant checks for cyclic actions");
    long sep_k = 0;
    std::string set_path;
    uint64_t sep_trials = 100000, five = 0;
    sep->add_option("--k", sep_k)->required();
    sep->add_option("--weights", weights_s)->required();
    sep->add_option("--set", set_path, "JSON array of polynomials")->required();
    sep->add_option("--trials", sep_trials);
    sep->add_option("--seed", seed);
    sep->add_option("--primes", primes_s, "override primes");
    sep->add_option("--search-five", five, "falsification search over N five-element combos");
    sep->add_option("--report", report_path);
    sep->add_flag("--no-timestamp", no_timestamp);

    // ---- suite ----
    auto* suite = app.add_subcommand("suite", "run the acceptance suite");
    std::string only_s;
    suite->add_option("--seed", seed);
    suite->add_option("--only", only_s, "comma list of criterion ids or name substrings");
    suite->add_option("--report", report_path);
    suite->add_flag("--no-timestamp", no_timestamp);

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) {
            if (list) {
                for (const FamilyInfo& f : family_table())
                    std::cout << f.id << "\t" << f.params << "\ttarget: P^[" << f.target << "]\n";
                return kClean;
            }
            FamilyParams p;
            p.weights = weights_s.empty() ? std::vector<long>{} : parse_longs(weights_s);
            p.dims = dims_s.empty() ? std::vector<long>{} : parse_longs(dims_s);
            p.degrees = degrees_s.empty() ? std::vector<long>{} : parse_longs(degrees_s);
            p.dvec = dvec_s.empty() ? std::vector<long>{} : parse_longs(dvec_s);
            if (has_n) p.n = n_arg;
            if (has_d) p.d = d_arg;
            if (has_k) p.k = k_arg;
            if (has_m) p.m = m_arg;
            Morphism m = build_family(family, p);
            std::cout << m.label << ": " << m.source.to_string() << " -> P^" << m.ambient_dim()
                      << " (multidegree " << m.mdeg.to_string() << ", "
                      << (has_decoder(m) ? "decoder: " + m.decoder : std::string("no decoder"))
                      << ")\n";
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << morphism_to_json(m).dump(2) << "\n";
                std::cout << "wrote " << out_path << "\n";
            }
            return kClean;
        }
        if (verify->parsed()) {
            Morphism m = morphism_from_json(load_json(morphism_path));
            VerificationReport col = collision_search(m, trials, seed, height);
            Json j;
            j["command"] = "verify";
            j["collision_search"] = report_to_json(col);
            bool clean = col.clean();
            if (has_decoder(m)) {
                VerificationReport rt = roundtrip_check(m, trials, seed, height);
                j["roundtrip_check"] = report_to_json(rt);
                clean = clean && rt.clean();
                // decoders dominate collision search on a shared sample set
                if (rt.clean() && !col.collisions.empty())
                    j["consistency_warning"] = "clean round trips with recorded collisions";
            }
            j["clean"] = clean;
            emit(j, report_path, !no_timestamp);
            return clean ? kClean : kViolation;
        }
        if (dec->parsed()) {
            Morphism m = morphism_from_json(load_json(morphism_path));
            DecodeResult d = decode(m, parse_rats(image_s));
            Json j;
            j["command"] = "decode";
            switch (d.kind) {
                case DecodeResult::Kind::SourcePoint:
                    j["kind"] = "source_point";
                    j["point"] = point_to_json(d.point);
                    break;
                case DecodeResult::Kind::ReweightedPoint: {
                    j["kind"] = "reweighted_point";
                    Json w = Json::array();
                    for (const Rat& c : d.reweighted) w.push_back(rat_to_string(c));
                    j["coordinates"] = std::move(w);
                    j["powers"] = d.powers;
                    j["note"] = d.note;
                    break;
                }
                case DecodeResult::Kind::Unavailable:
                    j["kind"] = "unavailable";
                    j["note"] = d.note;
                    break;
            }
            std::cout << j.dump(2) << "\n";
            return d.kind == DecodeResult::Kind::Unavailable ? kViolation : kClean;
        }
        if (rank2->parsed()) {
            Tensor222n t = tensor_from_json(load_json(tensor_path));
            RankDecision d = rank_decision(t);
            Json j;
            j["command"] = "rank2";
            j["decision"] = rank_class_name(d.cls);
            j["flattening_rank"] = flattening_rank(t);
            if (!d.summands.empty()) {
                Json s = Json::array();
                for (const auto& sm : d.summands) {
                    Json e;
                    e["u"] = {rat_to_string(sm.u[0]), rat_to_string(sm.u[1])};
                    e["v"] = {rat_to_string(sm.v[0]), rat_to_string(sm.v[1])};
                    Json w = Json::array();
                    for (const Rat& c : sm.w) w.push_back(rat_to_string(c));
                    e["w"] = std::move(w);
                    s.push_back(std::move(e));
                }
                j["summands"] = std::move(s);
            }
            if (d.witness_over_extension) {
                j["witness_over_extension"] = true;
                j["discriminant"] = rat_to_string(d.disc);
            }
            std::cout << j.dump(2) << "\n";
            return kClean;
        }
        if (sec->parsed()) {
            RationalCurveP3 c = curve_from_json(load_json(curve_path));
            auto pt = parse_rats(point_s);
            if (pt.size() != 4) throw Error("--point needs four coordinates");
            SecantMode mode;
            if (mode_s == "rational")
                mode = SecantMode::RationalCertificate;
            else if (mode_s == "modular")
                mode = SecantMode::ModularEvidence;
            else
                throw Error("--mode must be rational or modular");
            std::vector<uint64_t> primes;
            if (!primes_s.empty())
                for (long p : parse_longs(primes_s)) primes.push_back(static_cast<uint64_t>(p));
            SecantResult res =
                point_on_secant(c, {pt[0], pt[1], pt[2], pt[3]}, mode, std::move(primes));
            Json j = secant_result_to_json(res);
            j["command"] = "secant-curve";
            emit(j, report_path, !no_timestamp);
            return kClean;
        }
        if (gad->parsed()) {
            Json j;
            j["command"] = "gadget";
            j["m"] = gadget_m;
            bool clean = true;
            if (check == "all" || check == "flatten") {
                auto [g, s] = build_gadget(gadget_m);
                uint64_t bad = 0;
                for (uint64_t trial = 0; trial < gtrials; ++trial) {
                    Rng rng = Rng::keyed(seed, 0xF1A7 + gadget_m, trial);
                    EdgeWeighting w(s.u.size() + s.v.size());
                    for (auto& cc : w) cc = rng.rat(5);
                    if (!check_flattening_correspondence(g, s, w)) ++bad;
                }
                j["flattening_mismatches"] = bad;
                clean = clean && bad == 0;
            }
            if (check == "all" || check == "subspace") {
                GadgetReport rep = check_subspace_samples(gadget_m, gtrials, seed);
                j["subspace_samples"] = gadget_report_to_json(rep);
                clean = clean && rep.clean();
            }
            if (check == "all" || check == "annihilation") {
                bool ann = check_section_annihilation(gadget_m);
                j["annihilation"] = ann;
                clean = clean && ann;
            }
            j["clean"] = clean;
            emit(j, report_path, !no_timestamp);
            return clean ? kClean : kViolation;
        }
        if (sep->parsed()) {
            std::vector<long> w = parse_longs(weights_s);
            Json set_json = load_json(set_path);
            std::vector<PolyQ> polys;
            for (const Json& pj : set_json) polys.push_back(poly_from_json(pj));
            std::vector<uint64_t> primes;
            if (!primes_s.empty())
                for (long p : parse_longs(primes_s)) primes.push_back(static_cast<uint64_t>(p));
            else
                primes = default_sepinv_primes(sep_k);
            Json j;
            j["command"] = "sepinv";
            Json runs = Json::array();
            bool clean = true;
            for (uint64_t p : primes) {
                CyclicAction a(sep_k, w, p);
                SepReport rep = separates(a, InvariantSet::reduce(polys, a), sep_trials, seed);
                clean = clean && rep.clean();
                runs.push_back(sep_report_to_json(rep));
            }
            j["runs"] = std::move(runs);
            if (five > 0) {
                CyclicAction a(sep_k, w, primes[0]);
                FiveSearchReport fr = search_five_subsets(a, polys, five, sep_trials / 10 + 1, seed);
                Json f;
                f["candidates"] = fr.candidates;
                f["refuted"] = fr.refuted;
                f["unrefuted"] = fr.unrefuted;
                j["five_subset_search"] = std::move(f);
            }
            j["clean"] = clean;
            emit(j, report_path, !no_timestamp);
            return clean ? kClean : kViolation;
        }
        if (suite->parsed()) {
            std::vector<std::string> only;
            if (!only_s.empty()) {
                std::stringstream ss(only_s);
                std::string item;
                while (std::getline(ss, item, ',')) only.push_back(item);
            }
            auto results = run_suite(seed, only);
            Json j;
            j["command"] = "suite";
            j["seed"] = seed;
            Json rows = Json::array();
            bool all_pass = true;
            for (const CriterionResult& r : results) {
                std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << " — "
                          << r.details << " (" << r.seconds << " s)\n";
                Json row;
                row["id"] = r.id;
                row["name"] = r.name;
                row["pass"] = r.pass;
                row["details"] = r.details;
                row["seconds"] = r.seconds;
                rows.push_back(std::move(row));
                all_pass = all_pass && r.pass;
            }
            j["criteria"] = std::move(rows);
            j["all_pass"] = all_pass;
            if (!report_path.empty()) emit(j, report_path, !no_timestamp);
            return all_pass ? kClean : kViolation;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const SubsetSumClash& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
