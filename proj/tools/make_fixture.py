#!/usr/bin/env python3
"""Generate the small O*NET-format fixture used by the tests.

    python3 tools/make_fixture.py tests/fixtures

Writes onet_mini/ (tab-delimited files with the release's column layout),
labor_stats.csv and external_routine.csv. Output is deterministic.
"""

import csv
import random
import sys
from pathlib import Path

# (soc, title, theme, description, tasks)
OCCUPATIONS = [
    ("47-2061.00", "Construction Laborers", "manual",
     "Perform tasks involving physical labor at construction sites.",
     ["Dig trenches and backfill excavations on building sites.",
      "Carry lumber, bricks and other materials to work areas.",
      "Erect scaffolding and temporary structures for crews.",
      "Clean work sites by removing debris and scrap."]),
    ("47-5043.00", "Roof Bolters, Mining", "manual",
     "Operate machinery that installs roof support bolts in underground mines.",
     ["Drill holes into mine roofs with a bolting machine.",
      "Position and tighten bolts to secure the roof of the mine.",
      "Inspect roof conditions for loose rock before bolting."]),
    ("47-2031.00", "Carpenters", "manual",
     "Construct, erect, install and repair structures made of wood and similar materials.",
     ["Measure, cut and shape wood using hand and power tools.",
      "Assemble frames for walls, floors and roofs.",
      "Install doors, windows and trim in finished buildings.",
      "Read blueprints to plan the layout of a structure."]),
    ("53-3032.00", "Heavy and Tractor-Trailer Truck Drivers", "manual",
     "Drive tractor-trailer trucks to transport goods over long distances.",
     ["Drive trucks along scheduled routes to deliver cargo.",
      "Inspect brakes, tires and lights before each trip.",
      "Secure cargo and check loads for balance."]),
    ("43-9021.00", "Data Entry Keyers", "routine",
     "Operate keyboards to enter records into computer systems.",
     ["Type records from source documents into a database.",
      "Verify entered records against the original documents.",
      "Sort and file source documents after entry."]),
    ("43-3031.00", "Bookkeeping, Accounting, and Auditing Clerks", "routine",
     "Compute, classify and record numerical data to keep financial records complete.",
     ["Post transactions to ledgers following fixed procedures.",
      "Reconcile account balances at the end of each month.",
      "Prepare routine invoices and payment records."]),
    ("41-2011.00", "Cashiers", "routine",
     "Receive and disburse money at registers in retail establishments.",
     ["Scan items and total customer purchases at the register.",
      "Count money in the cash drawer at the start and end of a shift.",
      "Issue receipts and process refunds by set rules."]),
    ("51-2092.00", "Team Assemblers", "routine",
     "Work as part of a team assembling products on a production line.",
     ["Attach parts to products moving along an assembly line.",
      "Repeat the same assembly steps at the pace of the line.",
      "Check assembled units against specifications."]),
    ("51-4031.00", "Cutting, Punching, and Press Machine Setters, Operators, and Tenders",
     "routine",
     "Set up and tend machines that cut, punch or press metal and plastic stock.",
     ["Feed stock into presses and start the machine cycle.",
      "Adjust machine stops and guides to produce exact parts.",
      "Measure finished parts with gauges to verify tolerances."]),
    ("15-1252.00", "Software Developers", "abstract",
     "Research, design and develop computer software systems and applications.",
     ["Design software components and document their interfaces.",
      "Analyze user needs and translate them into program requirements.",
      "Write, test and debug computer programs."]),
    ("15-2041.00", "Statisticians", "abstract",
     "Develop and apply mathematical and statistical methods to analyze data.",
     ["Design surveys and experiments to collect data.",
      "Analyze data with statistical models and interpret results.",
      "Report statistical findings to researchers and managers."]),
    ("15-2051.00", "Data Scientists", "abstract",
     "Develop and implement methods to analyze large data sets.",
     ["Build predictive models from large data sets.",
      "Analyze data to find patterns and explain them to stakeholders.",
      "Write code to clean and transform raw data."]),
    ("11-1011.00", "Chief Executives", "abstract",
     "Determine and formulate policies and provide overall direction of organizations.",
     ["Direct the strategy and budget of the organization.",
      "Negotiate agreements with partners and major customers.",
      "Appoint and guide senior managers."]),
    ("23-1022.00", "Arbitrators, Mediators, and Conciliators", "abstract",
     "Facilitate negotiation and dialogue between disputing parties to resolve conflicts.",
     ["Listen to arguments and evidence presented by parties in a dispute.",
      "Explain the terms of settlements to the parties involved.",
      "Write decisions and awards that resolve conflicts."]),
    ("23-1023.00", "Judges, Magistrate Judges, and Magistrates", "abstract",
     "Preside over court proceedings and interpret the law.",
     ["Weigh evidence and testimony to decide cases.",
      "Instruct juries on applicable law.",
      "Write opinions explaining legal decisions."]),
    ("23-1011.00", "Lawyers", "abstract",
     "Represent clients in legal matters and advise them on their rights.",
     ["Advise clients on legal rights and obligations.",
      "Draft contracts, briefs and other legal documents.",
      "Argue cases before courts and negotiate settlements."]),
    ("29-1141.00", "Registered Nurses", "care",
     "Assess patient health problems and deliver nursing care.",
     ["Monitor and record patient condition and vital signs.",
      "Administer medication and treatments to patients.",
      "Teach patients and families how to manage illness."]),
    ("29-1123.00", "Physical Therapists", "care",
     "Plan and administer treatment to restore patient mobility.",
     ["Evaluate patient movement and plan therapy programs.",
      "Guide patients through exercises and stretching.",
      "Encourage patients to keep to their treatment plans."]),
    ("25-2021.00", "Elementary School Teachers, Except Special Education", "care",
     "Teach students basic academic and social skills in elementary schools.",
     ["Plan lessons and teach reading, writing and arithmetic.",
      "Encourage and counsel students who struggle in class.",
      "Meet with parents to discuss student progress."]),
    ("21-1021.00", "Child, Family, and School Social Workers", "care",
     "Provide social services to children and families.",
     ["Counsel families and children through difficult situations.",
      "Arrange housing, health and other support services.",
      "Build trusting relationships with clients and community groups."]),
    ("17-2081.00", "Environmental Engineers", "green",
     "Design systems that prevent, control or remediate environmental pollution.",
     ["Design pollution control systems for water and air.",
      "Analyze environmental data to assess contamination.",
      "Advise on renewable energy and waste reduction projects."]),
    ("47-2231.00", "Solar Photovoltaic Installers", "green",
     "Assemble and install solar panels and related systems on roofs and grounds.",
     ["Mount solar panels on roofs and racks.",
      "Connect photovoltaic arrays to inverters and the electric grid.",
      "Climb ladders and lift panels into position."]),
    ("49-9081.00", "Wind Turbine Service Technicians", "green",
     "Inspect, repair and maintain wind turbines.",
     ["Climb wind turbine towers to inspect blades and gears.",
      "Repair turbine mechanical and electrical components.",
      "Record maintenance work on renewable energy equipment."]),
    ("19-1031.00", "Conservation Scientists", "green",
     "Manage and protect forests, rangelands and other natural resources.",
     ["Plan conservation programs for forests and wildlife habitat.",
      "Analyze soil and water samples from natural areas.",
      "Advise landowners on sustainable land use."]),
]

# Listed but never rated; ingest must drop it.
UNRATED = ("11-9199.00", "Managers, All Other", "All managers not listed separately.")

# (element id, name, description, file, theme loadings)
ELEMENTS = [
    ("1.A.1.a.1", "Oral Comprehension", "Listening to spoken words and sentences and understanding them.",
     "Abilities", {"abstract": 0.9, "care": 0.8, "green": 0.6, "routine": 0.4, "manual": 0.3}),
    ("1.A.1.b.4", "Deductive Reasoning", "Applying general rules to specific problems to reach sensible answers.",
     "Abilities", {"abstract": 0.9, "care": 0.6, "green": 0.7, "routine": 0.3, "manual": 0.3}),
    ("1.A.1.f.1", "Spatial Orientation", "Knowing where you are relative to the environment or where objects are relative to you.",
     "Abilities", {"manual": 0.8, "green": 0.6, "routine": 0.3, "care": 0.2, "abstract": 0.1}),
    ("1.A.2.a.2", "Manual Dexterity", "Moving the hand and arm quickly to grasp, manipulate or assemble objects.",
     "Abilities", {"manual": 0.9, "routine": 0.6, "green": 0.6, "care": 0.4, "abstract": 0.1}),
    ("1.A.4.a.6", "Depth Perception", "Judging which of several objects is closer or farther away.",
     "Abilities", {"manual": 0.9, "green": 0.6, "routine": 0.4, "care": 0.3, "abstract": 0.1}),
    ("1.B.1.a", "Realistic", "Practical, hands-on work with plants, animals, tools and machines.",
     "Interests", {"manual": 0.9, "green": 0.7, "routine": 0.5, "care": 0.2, "abstract": 0.1}),
    ("1.B.1.b", "Investigative", "Work that involves ideas, searching for facts and solving problems mentally.",
     "Interests", {"abstract": 0.9, "green": 0.7, "care": 0.4, "routine": 0.2, "manual": 0.2}),
    ("1.B.1.d", "Social", "Work with, communicate with and teach people.",
     "Interests", {"care": 0.9, "abstract": 0.5, "routine": 0.3, "green": 0.3, "manual": 0.2}),
    ("1.B.1.f", "Conventional", "Following set procedures and routines with data and details.",
     "Interests", {"routine": 0.9, "abstract": 0.3, "manual": 0.3, "care": 0.3, "green": 0.3}),
    ("1.B.2.a", "Achievement", "Occupations that let workers use their strongest abilities and see results.",
     "Work Values", {"abstract": 0.8, "green": 0.7, "care": 0.7, "manual": 0.4, "routine": 0.2}),
    ("1.B.2.d", "Relationships", "Occupations that let workers provide service to others and work with co-workers.",
     "Work Values", {"care": 0.9, "abstract": 0.4, "green": 0.4, "routine": 0.4, "manual": 0.4}),
    ("1.B.2.f", "Independence", "Occupations that let workers plan and decide on their own.",
     "Work Values", {"abstract": 0.9, "green": 0.6, "care": 0.5, "manual": 0.3, "routine": 0.1}),
    ("1.C.3.a", "Cooperation", "Being pleasant with others on the job and showing a good-natured attitude.",
     "Work Styles", {"care": 0.9, "routine": 0.6, "manual": 0.5, "green": 0.5, "abstract": 0.5}),
    ("1.C.5.a", "Dependability", "Being reliable, responsible and fulfilling obligations.",
     "Work Styles", {"routine": 0.8, "care": 0.8, "manual": 0.7, "green": 0.7, "abstract": 0.7}),
    ("1.C.7.a", "Innovation", "Creativity and alternative thinking to develop new ideas.",
     "Work Styles", {"abstract": 0.9, "green": 0.7, "care": 0.4, "manual": 0.2, "routine": 0.1}),
    ("2.A.1.a", "Reading Comprehension", "Understanding written sentences and paragraphs in work documents.",
     "Skills", {"abstract": 0.9, "care": 0.7, "green": 0.7, "routine": 0.5, "manual": 0.3}),
    ("2.A.2.a", "Critical Thinking", "Using logic to weigh the strengths and weaknesses of alternative solutions.",
     "Skills", {"abstract": 0.9, "care": 0.7, "green": 0.7, "routine": 0.3, "manual": 0.3}),
    ("2.B.1.a", "Social Perceptiveness", "Being aware of the reactions of others and understanding why they react.",
     "Skills", {"care": 0.9, "abstract": 0.7, "green": 0.3, "routine": 0.3, "manual": 0.2}),
    ("2.B.3.l", "Repairing", "Repairing machines or systems with the needed tools.",
     "Skills", {"manual": 0.7, "green": 0.7, "routine": 0.4, "care": 0.1, "abstract": 0.1}),
    ("2.C.1.a", "Administration and Management", "Business and management principles for planning and coordinating resources.",
     "Knowledge", {"abstract": 0.8, "routine": 0.4, "care": 0.4, "green": 0.4, "manual": 0.2}),
    ("2.C.3.a", "Computers and Electronics", "Circuit boards, processors, computer hardware and software.",
     "Knowledge", {"abstract": 0.8, "routine": 0.6, "green": 0.5, "care": 0.3, "manual": 0.2}),
    ("2.C.3.d", "Building and Construction", "Materials, methods and tools used to build houses, roads and other structures.",
     "Knowledge", {"manual": 0.9, "green": 0.6, "routine": 0.2, "care": 0.1, "abstract": 0.1}),
    ("2.C.5.a", "Medicine and Dentistry", "Information and techniques needed to diagnose and treat injuries and diseases.",
     "Knowledge", {"care": 0.9, "abstract": 0.2, "green": 0.2, "routine": 0.1, "manual": 0.1}),
    ("4.A.1.a.1", "Getting Information", "Observing, receiving and otherwise obtaining information from all relevant sources.",
     "Work Activities", {"abstract": 0.9, "care": 0.8, "green": 0.8, "routine": 0.6, "manual": 0.5}),
    ("4.A.2.a.4", "Analyzing Data or Information", "Identifying the underlying principles or facts of information by breaking it down.",
     "Work Activities", {"abstract": 0.9, "green": 0.7, "care": 0.4, "routine": 0.3, "manual": 0.1}),
    ("4.A.2.b.2", "Thinking Creatively", "Developing, designing or creating new applications, ideas and products.",
     "Work Activities", {"abstract": 0.9, "green": 0.6, "care": 0.4, "manual": 0.2, "routine": 0.1}),
    ("4.A.3.a.3", "Controlling Machines and Processes", "Using controls or direct physical activity to operate machines or processes.",
     "Work Activities", {"routine": 0.8, "manual": 0.8, "green": 0.5, "care": 0.1, "abstract": 0.1}),
    ("4.A.3.a.4", "Operating Vehicles, Mechanized Devices, or Equipment", "Running, maneuvering or driving vehicles and mechanized equipment.",
     "Work Activities", {"manual": 0.9, "green": 0.5, "routine": 0.4, "care": 0.1, "abstract": 0.1}),
    ("4.A.4.a.1", "Interpreting the Meaning of Information for Others", "Translating or explaining what information means and how it can be used.",
     "Work Activities", {"abstract": 0.9, "care": 0.7, "green": 0.5, "routine": 0.2, "manual": 0.1}),
    ("4.A.4.a.4", "Establishing and Maintaining Interpersonal Relationships", "Developing constructive and cooperative working relationships with others.",
     "Work Activities", {"care": 0.9, "abstract": 0.8, "green": 0.4, "routine": 0.3, "manual": 0.3}),
    ("4.A.4.b.4", "Guiding, Directing, and Motivating Subordinates", "Providing guidance and direction to subordinates and setting performance standards.",
     "Work Activities", {"abstract": 0.8, "care": 0.6, "green": 0.4, "manual": 0.3, "routine": 0.2}),
    ("4.A.4.b.5", "Coaching and Developing Others", "Identifying the developmental needs of others and helping them improve.",
     "Work Activities", {"care": 0.9, "abstract": 0.6, "green": 0.3, "manual": 0.2, "routine": 0.1}),
    ("4.C.2.d.1.g", "Spend Time Using Your Hands to Handle, Control, or Feel Objects, Tools, or Controls",
     "How much time is spent using hands to handle or feel objects, tools or controls.",
     "Work Context", {"manual": 0.9, "routine": 0.8, "green": 0.6, "care": 0.5, "abstract": 0.1}),
    ("4.C.2.d.1.i", "Spend Time Making Repetitive Motions", "How much time is spent making repetitive motions.",
     "Work Context", {"routine": 0.9, "manual": 0.6, "green": 0.4, "care": 0.3, "abstract": 0.1}),
    ("4.C.3.b.4", "Importance of Being Exact or Accurate", "How important being very exact or highly accurate is in performing the job.",
     "Work Context", {"routine": 0.9, "abstract": 0.6, "care": 0.7, "green": 0.6, "manual": 0.5}),
    ("4.C.3.b.7", "Importance of Repeating Same Tasks", "How important repeating the same physical or mental activities over and over is.",
     "Work Context", {"routine": 0.9, "manual": 0.6, "care": 0.3, "green": 0.3, "abstract": 0.1}),
    ("4.C.3.b.8", "Structured versus Unstructured Work", "To what extent the job is structured for the worker rather than letting the worker set tasks and goals.",
     "Work Context", {"abstract": 0.9, "care": 0.6, "green": 0.6, "manual": 0.3, "routine": 0.1}),
    ("4.C.3.d.3", "Pace Determined by Speed of Equipment", "How important it is to keep pace with equipment or machinery.",
     "Work Context", {"routine": 0.9, "manual": 0.5, "green": 0.3, "care": 0.1, "abstract": 0.1}),
]

SCALES = [
    ("IM", "Importance", 1, 5), ("LV", "Level", 0, 7), ("OI", "Occupational Interests", 1, 7),
    ("EX", "Extent", 1, 7), ("CX", "Context", 1, 5), ("CXP", "Context (Categories 1-5)", 0, 100),
    ("CT", "Context", 1, 3), ("CTP", "Context (Categories 1-3)", 0, 100), ("RT", "Relevance of Task", 0, 100),
    ("FT", "Frequency of Task (Categories 1-7)", 0, 100), ("IH", "Occupational Interest High-Point", 0, 6),
]

EDUCATION = {
    "manual": "High school diploma or equivalent", "routine": "High school diploma or equivalent",
    "abstract": "Bachelor's degree", "care": "Bachelor's degree", "green": "Bachelor's degree",
}
EDU_OVERRIDE = {"47-5043.00": "No formal educational credential", "41-2011.00": "No formal educational credential",
                "23-1011.00": "Doctoral or professional degree", "23-1023.00": "Doctoral or professional degree",
                "29-1123.00": "Doctoral or professional degree", "15-2041.00": "Master's degree",
                "21-1021.00": "Master's degree", "47-2231.00": "High school diploma or equivalent",
                "49-9081.00": "Postsecondary nondegree award", "43-3031.00": "Some college, no degree"}
WAGE = {"manual": 45000, "routine": 36000, "abstract": 110000, "care": 70000, "green": 65000}
GROWTH = {"manual": 4.0, "routine": -3.0, "abstract": 8.0, "care": 6.0, "green": 20.0}
ROUTINE_EXT = {"manual": 0.2, "routine": 1.4, "abstract": -1.1, "care": -0.6, "green": -0.3}

DATE = "07/2020"
SOURCE = "Analyst"


def fmt(v):
    return f"{v:.2f}"


def write_tsv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("\t".join(header) + "\r\n")
        for r in rows:
            f.write("\t".join(str(x) for x in r) + "\r\n")


def main(out_root):
    rng = random.Random(20201)
    root = Path(out_root)
    onet = root / "onet_mini"
    onet.mkdir(parents=True, exist_ok=True)
    titles = {soc: title for soc, title, *_ in OCCUPATIONS}
    titles[UNRATED[0]] = UNRATED[1]

    write_tsv(onet / "Occupation Data.txt", ["O*NET-SOC Code", "Title", "Description"],
              [(s, t, d) for s, t, _, d, _ in OCCUPATIONS] + [UNRATED])
    write_tsv(onet / "Scales Reference.txt", ["Scale ID", "Scale Name", "Minimum", "Maximum"], SCALES)
    write_tsv(onet / "Content Model Reference.txt", ["Element ID", "Element Name", "Description"],
              [(e, n, d) for e, n, d, _, _ in ELEMENTS])

    # Tasks: IDs are numeric strings, shared nowhere.
    stmt_rows, rating_rows = [], []
    task_id = 8000
    for soc, title, theme, _, tasks in OCCUPATIONS:
        for i, body in enumerate(tasks):
            task_id += rng.randint(1, 40)
            tid = str(task_id)
            core = "Core" if i < 2 else "Supplemental"
            stmt_rows.append((soc, title, tid, body, core, rng.randint(8, 40), DATE, "Incumbent"))
            if soc == "53-3032.00" and i == 2:
                continue  # listed but unrated
            n = rng.randint(8, 40)
            im = round(rng.uniform(2.5, 4.9), 2)
            rt = round(rng.uniform(60, 100), 2)
            rating_rows.append((soc, title, tid, body, "IM", "Importance", "n/a", fmt(im), n, "0.15", "3.10", "4.20", "N", DATE, "Incumbent"))
            rating_rows.append((soc, title, tid, body, "RT", "Relevance of Task", "n/a", fmt(rt), n, "4.00", "70.0", "95.0", "N", DATE, "Incumbent"))
            weights = [rng.random() + (2.0 if k == rng.randint(1, 7) else 0.0) for k in range(1, 8)]
            total = sum(weights)
            for k, w in enumerate(weights, start=1):
                rating_rows.append((soc, title, tid, body, "FT", "Frequency of Task (Categories 1-7)", k,
                                    fmt(100 * w / total), n, "3.00", "", "", "N", DATE, "Incumbent"))
    write_tsv(onet / "Task Statements.txt",
              ["O*NET-SOC Code", "Title", "Task ID", "Task", "Task Type", "Incumbents Responding", "Date", "Domain Source"],
              stmt_rows)
    write_tsv(onet / "Task Ratings.txt",
              ["O*NET-SOC Code", "Title", "Task ID", "Task", "Scale ID", "Scale Name", "Category", "Data Value", "N",
               "Standard Error", "Lower CI Bound", "Upper CI Bound", "Recommend Suppress", "Date", "Domain Source"],
              rating_rows)

    scale_range = {s: (lo, hi) for s, _, lo, hi in SCALES}

    def level(loading, scale):
        lo, hi = scale_range[scale]
        u = min(1.0, max(0.0, loading + rng.gauss(0.0, 0.08)))
        return round(lo + u * (hi - lo), 2)

    files = {}
    for eid, name, _, fname, loads in ELEMENTS:
        for soc, title, theme, _, _ in OCCUPATIONS:
            if fname == "Work Styles" and soc == "41-2011.00":
                continue  # one occupation without work styles
            rows = files.setdefault(fname, [])
            load = loads[theme]
            n = rng.randint(8, 30)
            if fname in ("Abilities", "Skills", "Knowledge", "Work Activities"):
                for scale, sname in (("IM", "Importance"), ("LV", "Level")):
                    rows.append((soc, title, eid, name, scale, sname, fmt(level(load, scale)), n, "0.20", "2.00", "4.00",
                                 "N", "N" if scale == "LV" else "n/a", DATE, SOURCE))
            elif fname in ("Interests", "Work Values"):
                scale = "OI" if fname == "Interests" else "EX"
                rows.append((soc, title, eid, name, scale, "", fmt(level(load, scale)), DATE, "Machine Learning"))
                if fname == "Interests" and eid == "1.B.1.a":
                    rows.append((soc, title, "1.B.1.g", "First Interest High-Point", "IH", "", "1.00", DATE, "Machine Learning"))
            elif fname == "Work Styles":
                rows.append((soc, title, eid, name, "IM", "Importance", fmt(level(load, "IM")), n, "0.20", "2.00", "4.00",
                             "N", DATE, SOURCE))
            else:  # Work Context: a point rating plus its category distribution
                scale, pscale, ncat = ("CT", "CTP", 3) if eid == "4.C.3.d.3" else ("CX", "CXP", 5)
                rows.append((soc, title, eid, name, scale, "Context", "n/a", fmt(level(load, scale)), n, "0.10",
                             "1.00", "5.00", "N", "n/a", DATE, "Incumbent"))
                share = [rng.random() for _ in range(ncat)]
                for k, w in enumerate(share, start=1):
                    rows.append((soc, title, eid, name, pscale, "Context (Categories)", k, fmt(100 * w / sum(share)), n,
                                 "2.00", "", "", "N", "n/a", DATE, "Incumbent"))

    base = ["O*NET-SOC Code", "Title", "Element ID", "Element Name", "Scale ID", "Scale Name"]
    stats = ["N", "Standard Error", "Lower CI Bound", "Upper CI Bound", "Recommend Suppress"]
    headers = {
        "Abilities": base + ["Data Value"] + stats + ["Not Relevant", "Date", "Domain Source"],
        "Skills": base + ["Data Value"] + stats + ["Not Relevant", "Date", "Domain Source"],
        "Knowledge": base + ["Data Value"] + stats + ["Not Relevant", "Date", "Domain Source"],
        "Work Activities": base + ["Data Value"] + stats + ["Not Relevant", "Date", "Domain Source"],
        "Interests": base + ["Data Value", "Date", "Domain Source"],
        "Work Values": base + ["Data Value", "Date", "Domain Source"],
        "Work Styles": base + ["Data Value"] + stats + ["Date", "Domain Source"],
        "Work Context": base + ["Category", "Data Value"] + stats + ["Not Relevant", "Date", "Domain Source"],
    }
    # The high-point pseudo-element needs a content model entry.
    with open(onet / "Content Model Reference.txt", "a", encoding="utf-8", newline="") as f:
        f.write("1.B.1.g\tFirst Interest High-Point\tThe highest-ranked interest area.\r\n")
    for fname, rows in files.items():
        write_tsv(onet / f"{fname}.txt", headers[fname], rows)

    # Labor statistics (BLS-style seven-character codes) and an external measure.
    with open(root / "labor_stats.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["soc_code", "median_annual_wage", "employment_growth_pct", "education", "major_group_title"])
        for soc, title, theme, _, _ in OCCUPATIONS:
            wage = round(WAGE[theme] * rng.uniform(0.7, 1.4), -2)
            growth = round(GROWTH[theme] + rng.gauss(0, 3), 1)
            edu = EDU_OVERRIDE.get(soc, EDUCATION[theme])
            w.writerow([soc[:7], f"{wage:.0f}", f"{growth:.1f}", edu, ""])
        w.writerow(["99-9999", "", "", "", "Not an occupation of the catalog"])

    with open(root / "external_routine.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["soc_code", "routine"])
        for soc, title, theme, _, _ in OCCUPATIONS:
            w.writerow([soc, f"{ROUTINE_EXT[theme] + rng.gauss(0, 0.3):.4f}"])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
