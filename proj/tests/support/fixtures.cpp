#include "support/fixtures.hpp"

#include "freshtab/hash.hpp"
#include "freshtab/http_cache.hpp"
#include "freshtab/rng.hpp"
#include "freshtab/wiki.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <vector>

namespace freshtab::testsupport {
namespace {

using nlohmann::json;

constexpr std::uint64_t kFixtureSeed = 9001;

// How many pages each catalog entry's query returns. "stale" pages are
// new-page hits whose first revision predates the cutoff (they must be
// dropped); "dupes" repeat QIDs already emitted for the domain's first
// entry (they must dedup away).
struct EntryPlan {
    const char* id;
    int unique;
    int stale;
    int dupes;
};

constexpr std::array<EntryPlan, 10> kPlan = {{
    {"sport-season", 120, 0, 0},
    {"sport-competition", 30, 0, 0},
    {"sport-new-page", 54, 1, 1},
    {"politics-election", 100, 0, 0},
    {"politics-new-page", 42, 1, 0},
    {"culture-festival", 40, 0, 0},
    {"culture-release", 30, 0, 0},
    {"culture-new-page", 39, 0, 1},
    {"other-event", 40, 0, 0},
    {"other-new-page", 36, 2, 0},
}};

// Positions (within a domain's page sequence) engineered to survive
// harvesting but fail table cleaning; everything else yields one usable
// table.
const std::map<Domain, std::vector<int>>& reject_positions() {
    static const std::map<Domain, std::vector<int>> positions = {
        {Domain::kSport, {5, 28, 51, 74, 97, 120, 143, 166}},
        {Domain::kPolitics, {5, 28, 51, 74}},
        {Domain::kCulture, {5, 28, 51, 74}},
        {Domain::kOther, {5, 16, 27, 38, 49, 60}},
    };
    return positions;
}

constexpr const char* kTeams[] = {
    "Riverton United", "Halwick City", "Northgate Rovers", "Eastfield Albion",
    "Summerby Town",   "Kestrel FC",   "Doverham County",  "Westmoor Wanderers",
    "Ashlake Athletic", "Pinecrest SC", "Granwell FC",      "Oakhurst Rangers"};

constexpr const char* kPlaces[] = {
    "Riverton", "Halwick", "Northgate", "Eastfield", "Summerby", "Doverham",
    "Westmoor", "Ashlake", "Pinecrest", "Granwell",  "Oakhurst", "Maplebrook",
    "Seaford",  "Winterley", "Brackenhill", "Stonefen"};

constexpr const char* kSports[] = {"Badminton", "Fencing",  "Rowing",  "Cycling",
                                   "Archery",   "Handball", "Curling", "Squash"};

constexpr const char* kParties[] = {
    "Unity Alliance",     "Progress Front", "Civic Forum",     "Green Compact",
    "Liberal Assembly",   "Heritage Bloc",  "Workers' League", "Reform Current"};

constexpr const char* kGivenNames[] = {"Alin",  "Borya", "Ciara", "Danel", "Edur",
                                       "Fenna", "Goran", "Hilde", "Ilkka", "Jorun"};

constexpr const char* kSurnames[] = {"Maresca", "Lindqvist", "Okafor",  "Petrov",
                                     "Sandoval", "Keskinen",  "Brandt",  "Almeida",
                                     "Takeda",   "Moreau"};

constexpr const char* kWorks[] = {
    "The Quiet Harbor", "Glass Meridian",  "Paper Lanterns", "Salt and Smoke",
    "Winter Arithmetic", "The Last Ferry", "Orchard Road",   "A Minor Key"};

constexpr const char* kAwards[] = {"Best Feature", "Best Director", "Best Screenplay",
                                   "Audience Award", "Jury Prize", "Best Documentary"};

constexpr const char* kCountries[] = {"Valdoria", "Kestrelia", "Northmark", "Suvania",
                                      "Ostreva",  "Meridia",   "Calverra",  "Tervain"};

Date add_days(Date d, int days) {
    for (int i = 0; i < days; ++i) {
        d.day += 1;
        if (d.day > days_in_month(d.year, d.month)) {
            d.day = 1;
            d.month += 1;
            if (d.month > 12) {
                d.month = 1;
                d.year += 1;
            }
        }
    }
    return d;
}

struct FixturePage {
    std::string qid;
    std::string title;
    std::string url;
    Domain domain = Domain::kOther;
    Strategy strategy = Strategy::kEventWindow;
    int domain_pos = 0;  // position within the domain's page sequence
    Date event_date;     // event-window pages
    Date created;
    bool stale = false;  // created before the cutoff; must be dropped
};

std::string underscored(std::string title) {
    std::replace(title.begin(), title.end(), ' ', '_');
    return title;
}

// (place, suffix) is injective in pos, so titles (and page URLs) never
// collide within a domain.
std::string make_title(Domain domain, int pos) {
    const std::string place = kPlaces[static_cast<std::size_t>(pos) % std::size(kPlaces)];
    const std::string sport =
        kSports[static_cast<std::size_t>(pos / 3) % std::size(kSports)];
    const std::string suffix = pos >= 16 ? " " + std::to_string(pos / 16 + 1) : "";
    switch (domain) {
        case Domain::kSport: {
            if (pos % 3 == 0) return "2024-25 " + place + " " + sport + " League" + suffix;
            return "2025 " + place + " " + sport + " Championships" + suffix;
        }
        case Domain::kPolitics:
            return "2025 " + place + (pos % 2 == 0 ? " general election" : " mayoral election") +
                   suffix;
        case Domain::kCulture:
            if (pos % 2 == 0) return place + " Film Festival 2025" + suffix;
            return "2025 " + place + " Book Week" + suffix;
        case Domain::kOther:
            if (pos % 2 == 0) return "2025 " + place + " earthquake" + suffix;
            return "2025 " + place + " floods" + suffix;
    }
    return place + suffix;
}

// ---- page HTML -----------------------------------------------------------

std::string cells_row(const std::vector<std::string>& cells, bool header) {
    std::string out = "<tr>";
    for (const auto& cell : cells) {
        out += header ? "<th>" + cell + "</th>" : "<td>" + cell + "</td>";
    }
    out += "</tr>\n";
    return out;
}

std::string simple_table(const std::string& caption, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows,
                         const std::string& klass = "wikitable") {
    std::string out = "<table class=\"" + klass + "\">\n";
    if (!caption.empty()) out += "<caption>" + caption + "</caption>\n";
    out += "<tbody>\n" + cells_row(header, true);
    for (const auto& row : rows) out += cells_row(row, false);
    out += "</tbody></table>\n";
    return out;
}

std::vector<std::vector<std::string>> domain_rows(const FixturePage& page, SplitMix64& rng,
                                                  int count) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < count; ++i) {
        switch (page.domain) {
            case Domain::kSport:
                rows.push_back({std::to_string(i + 1), kTeams[(rng.next_below(12) + i) % 12],
                                std::to_string(10 + rng.next_below(20)),
                                std::to_string(rng.next_below(15)),
                                std::to_string(rng.next_below(10)),
                                std::to_string(rng.next_below(40))});
                break;
            case Domain::kPolitics:
                rows.push_back({kParties[(rng.next_below(8) + i) % 8],
                                std::string(kGivenNames[rng.next_below(10)]) + " " +
                                    kSurnames[rng.next_below(10)],
                                std::to_string(1000 + rng.next_below(90000)),
                                std::to_string(1 + rng.next_below(60)) + "." +
                                    std::to_string(rng.next_below(10)),
                                std::to_string(rng.next_below(25))});
                break;
            case Domain::kCulture:
                rows.push_back({kAwards[(rng.next_below(6) + i) % 6],
                                std::string(kGivenNames[rng.next_below(10)]) + " " +
                                    kSurnames[rng.next_below(10)],
                                kWorks[rng.next_below(8)],
                                rng.next_below(3) == 0 ? "Nominated" : "Won"});
                break;
            case Domain::kOther:
                rows.push_back({kCountries[(rng.next_below(8) + i) % 8],
                                std::to_string(rng.next_below(500)),
                                std::to_string(rng.next_below(2000)),
                                std::to_string(rng.next_below(100))});
                break;
        }
    }
    return rows;
}

std::vector<std::string> domain_header(Domain domain) {
    switch (domain) {
        case Domain::kSport: return {"Pos", "Team", "Played", "Won", "Drawn", "Points"};
        case Domain::kPolitics: return {"Party", "Candidate", "Votes", "%", "Seats"};
        case Domain::kCulture: return {"Award", "Recipient", "Work", "Result"};
        case Domain::kOther: return {"Country", "Deaths", "Injuries", "Missing"};
    }
    return {};
}

// Reject variants, cycled per domain: a page that must not contribute any
// usable table.
std::string reject_table_html(const FixturePage& page, int ordinal, SplitMix64& rng) {
    switch (ordinal % 5) {
        case 0:  // navigation-only page
            return "<table class=\"navbox\"><tbody><tr><td>Related articles</td></tr>"
                   "</tbody></table>\n";
        case 1:  // too small
            return simple_table("", {"Year", "Note"}, {{"2025", "announced"}});
        case 2: {  // every cell a non-value
            std::vector<std::vector<std::string>> rows(
                6, std::vector<std::string>(4, "&mdash;"));
            return simple_table("Planned fixtures", {"Date", "Round", "Venue", "Score"}, rows);
        }
        case 3: {  // future event, mostly empty
            std::vector<std::vector<std::string>> rows;
            for (int i = 0; i < 8; ++i) {
                rows.push_back({std::to_string(i + 1), "", "", "", ""});
            }
            return simple_table("Upcoming schedule", {"No.", "Date", "Opponent", "Venue", "Result"},
                                rows);
        }
        default: {  // irreducibly over the serialization cap
            std::string essay;
            for (int i = 0; i < 19; ++i) {
                essay += "commentary " + std::to_string(rng.next_below(100)) + " ";
            }
            std::vector<std::vector<std::string>> rows(
                6, std::vector<std::string>(5, essay.substr(0, 190)));
            return simple_table("Extended notes", {"A", "B", "C", "D", "E"}, rows);
        }
    }
}

std::string page_html(const FixturePage& page) {
    SplitMix64 rng = substream(kFixtureSeed, "page-html", page.qid);
    std::string body;
    body += "<section><p>" + page.title +
            " took place in 2025. This page summarizes the outcome.</p></section>\n";

    const auto& rejects = reject_positions().at(page.domain);
    const auto it = std::find(rejects.begin(), rejects.end(), page.domain_pos);
    if (it != rejects.end()) {
        const int ordinal = static_cast<int>(it - rejects.begin());
        body += reject_table_html(page, ordinal, rng);
    } else {
        const bool multirow_header = page.domain_pos % 13 == 4;
        const bool with_markers = page.domain_pos % 7 == 1;
        const bool with_nonvalues = page.domain_pos % 5 == 3;
        const bool long_table = page.domain_pos % 37 == 2;
        const bool second_table = page.domain_pos % 17 == 7;

        const int row_count = long_table ? 35 : 5 + static_cast<int>(rng.next_below(8));
        auto rows = domain_rows(page, rng, row_count);
        if (with_markers) {
            rows[0][1] += "<sup class=\"reference\">[1]</sup>";
            rows[1][0] += "[note 2]";
        }
        if (with_nonvalues) {
            rows[0][rows[0].size() - 1] = "&mdash;";
            rows[2][2] = "N/A";
        }
        if (long_table) {
            for (auto& row : rows) {
                row[1] += " extended squad listing " + std::to_string(rng.next_below(1000));
            }
        }

        std::string table;
        if (multirow_header) {
            // stacked header: first column spans both rows, the rest sit
            // under two group labels
            const auto header = domain_header(page.domain);
            std::string head =
                "<tr><th rowspan=\"2\">" + header[0] + "</th><th colspan=\"2\">First half" +
                "</th><th colspan=\"" + std::to_string(header.size() - 3) +
                "\">Second half</th></tr>\n<tr>";
            for (std::size_t i = 1; i < header.size(); ++i) {
                head += "<th>" + header[i] + "</th>";
            }
            head += "</tr>\n";
            table = "<table class=\"wikitable\">\n<caption>" + page.title +
                    "</caption>\n<tbody>\n" + head;
            for (const auto& row : rows) table += cells_row(row, false);
            table += "</tbody></table>\n";
        } else {
            table = simple_table(page.title, domain_header(page.domain), rows);
        }
        body += table;

        if (second_table) {
            std::vector<std::vector<std::string>> sparse = domain_rows(page, rng, 5);
            for (auto& row : sparse) {
                row[1] = "";
                if (row.size() > 3) row[3] = "";
            }
            body += simple_table("Reserve list", domain_header(page.domain), sparse);
        }
    }
    body += "<table class=\"navbox\" role=\"navigation\"><tbody><tr><td>"
            "<a href=\"#\">Portal</a></td></tr></tbody></table>\n";
    return "<!DOCTYPE html>\n<html><head><title>" + page.title +
           "</title></head>\n<body>\n" + body + "</body></html>\n";
}

// ---- recorded responses ---------------------------------------------------

std::string sparql_response(const std::vector<const FixturePage*>& pages, bool event_vars) {
    json bindings = json::array();
    std::vector<const FixturePage*> sorted = pages;
    std::sort(sorted.begin(), sorted.end(),
              [](const FixturePage* a, const FixturePage* b) { return a->qid < b->qid; });
    for (const FixturePage* page : sorted) {
        json row = {
            {"item",
             {{"type", "uri"},
              {"value", "http://www.wikidata.org/entity/" + page->qid}}},
            {"article", {{"type", "uri"}, {"value", page->url}}},
            {"title", {{"type", "literal"}, {"value", page->title}}},
        };
        if (event_vars) {
            row["date"] = {{"type", "literal"},
                           {"datatype", "http://www.w3.org/2001/XMLSchema#dateTime"},
                           {"value", format_date(page->event_date) + "T00:00:00Z"}};
        } else {
            row["modified"] = {{"type", "literal"},
                               {"datatype", "http://www.w3.org/2001/XMLSchema#dateTime"},
                               {"value", format_date(page->created) + "T04:10:00Z"}};
        }
        bindings.push_back(std::move(row));
    }
    json head_vars = event_vars ? json::array({"item", "article", "title", "date"})
                                : json::array({"item", "article", "title", "modified"});
    return json{{"head", {{"vars", head_vars}}}, {"results", {{"bindings", bindings}}}}
        .dump();
}

std::string revision_response(const FixturePage& page) {
    const std::uint64_t page_id = 40000 + fnv1a64(page.qid) % 900000;
    const json doc = {
        {"batchcomplete", ""},
        {"query",
         {{"pages",
           {{std::to_string(page_id),
             {{"pageid", page_id},
              {"ns", 0},
              {"title", page.title},
              {"revisions",
               json::array({json{
                   {"timestamp", format_date(page.created) + "T08:30:00Z"}}})}}}}}}}};
    return doc.dump();
}

}  // namespace

std::filesystem::path source_dir() { return FRESHTAB_SOURCE_DIR; }

ConceptCatalog fixture_catalog() {
    return load_catalog((source_dir() / "data" / "concept_catalog.yaml").string());
}

PipelineConfig fixture_config(const std::string& variant,
                              const std::filesystem::path& cache_dir) {
    PipelineConfig cfg =
        load_config((source_dir() / "configs" / ("en-" + variant + ".yaml")).string());
    cfg.cache_dir = cache_dir.string();
    return cfg;
}

FixtureStats materialize_fixture_cache(const std::filesystem::path& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    const ConceptCatalog catalog = fixture_catalog();
    const PipelineConfig cfg = fixture_config("lot", cache_dir);

    auto entry_of = [&](const std::string& id) -> const ConceptEntry& {
        for (const auto& entry : catalog.entries) {
            if (entry.id == id) return entry;
        }
        throw std::runtime_error("fixture plan references unknown catalog entry " + id);
    };

    FixtureStats stats;
    for (Domain d : kAllDomains) {
        stats.candidate_counts[d] = 0;
        stats.pool_counts[d] = 0;
    }

    int global_index = 0;
    std::map<Domain, int> domain_pos;
    std::vector<FixturePage> pages;            // all unique pages, stale included
    pages.reserve(600);
    std::map<std::string, std::vector<std::size_t>> response_members;  // entry id -> page idx

    for (const EntryPlan& plan : kPlan) {
        const ConceptEntry& entry = entry_of(plan.id);
        for (int i = 0; i < plan.unique + plan.stale; ++i) {
            const bool stale = i >= plan.unique;
            FixturePage page;
            page.qid = "Q" + std::to_string(9100000 + ++global_index);
            page.domain = entry.domain;
            page.strategy = entry.strategy;
            page.domain_pos = stale ? -1 : domain_pos[entry.domain]++;
            page.title = stale ? "Old " + make_title(entry.domain, 990 + i)
                               : make_title(entry.domain, page.domain_pos);
            page.url = "https://en.wikipedia.org/wiki/" + underscored(page.title);
            page.stale = stale;
            const std::uint64_t h = fnv1a64(page.qid);
            page.event_date = add_days(cfg.cutoff_date, 4 + static_cast<int>(h % 110));
            if (stale) {
                page.created = Date{2024, 6, 15};
            } else if (entry.strategy == Strategy::kNewPage) {
                page.created = add_days(cfg.cutoff_date, 1 + static_cast<int>(h % 100));
            } else {
                page.created = h % 10 < 3 ? Date{2021, 6, 1 + static_cast<int>(h % 27)}
                                          : add_days(cfg.cutoff_date,
                                                     1 + static_cast<int>(h % 100));
            }
            pages.push_back(page);
            response_members[plan.id].push_back(pages.size() - 1);
        }
    }

    // duplicate hits: the domain's first event-window page also shows up in
    // the new-page response; dedup must keep the event-window candidate
    for (const EntryPlan& plan : kPlan) {
        if (plan.dupes == 0) continue;
        const ConceptEntry& entry = entry_of(plan.id);
        for (std::size_t i = 0; i < pages.size(); ++i) {
            if (pages[i].domain == entry.domain &&
                pages[i].strategy == Strategy::kEventWindow && !pages[i].stale) {
                for (int k = 0; k < plan.dupes; ++k) {
                    response_members[plan.id].push_back(i);
                }
                break;
            }
        }
    }

    // SPARQL responses
    for (const EntryPlan& plan : kPlan) {
        const ConceptEntry& entry = entry_of(plan.id);
        std::vector<const FixturePage*> members;
        for (std::size_t idx : response_members[plan.id]) members.push_back(&pages[idx]);
        const bool event_vars = entry.strategy == Strategy::kEventWindow;
        const std::string query =
            event_vars
                ? build_event_query(entry, cfg.cutoff_date, cfg.collection_end, cfg.language)
                : build_newpage_query(entry, cfg.cutoff_date, cfg.collection_end,
                                      cfg.language);
        const HttpRequest request = sparql_request(cfg.endpoints.sparql_url, query);
        write_file_atomic(cache_dir / CachedHttpClient::cache_key(request),
                          sparql_response(members, event_vars));
    }

    // revision lookups and page HTML
    for (const FixturePage& page : pages) {
        const HttpRequest revision =
            wiki_revision_request(cfg.endpoints.wiki_api_base, page.title);
        write_file_atomic(cache_dir / CachedHttpClient::cache_key(revision),
                          revision_response(page));
        if (page.stale) continue;  // dropped before the HTML stage
        const HttpRequest html = wiki_html_request(cfg.endpoints.wiki_api_base, page.title);
        write_file_atomic(cache_dir / CachedHttpClient::cache_key(html), page_html(page));

        stats.candidate_counts[page.domain] += 1;
        stats.total_candidates += 1;
        const auto& rejects = reject_positions().at(page.domain);
        if (std::find(rejects.begin(), rejects.end(), page.domain_pos) == rejects.end()) {
            stats.pool_counts[page.domain] += 1;
        }
    }
    return stats;
}

std::string tree_sha256(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::string material;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        std::ostringstream content;
        content << in.rdbuf();
        material += std::filesystem::relative(file, dir).string();
        material += '\x1f';
        material += sha256_hex(content.str());
        material += '\n';
    }
    return sha256_hex(material);
}

}  // namespace freshtab::testsupport
