#!/usr/bin/env python3
"""Regenerate the shipped reference taxonomy JSON.

The topic list (mnemonics, names, surfaces) covers the standard themes of
central bank communication for the Australian context. Phrases and
decision trees are repository-authored: phrases are a compact seed set
per topic (a production deployment would curate a much larger list), and
each tree is a small question/answer structure following a handful of
recurring shapes. Run from the repository root:

    python3 tools/build_reference_taxonomy.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

OUT_PATH = Path(__file__).resolve().parents[1] / "src" / "hawkdove" / "data" / "reference_taxonomy.json"

VERSION = "2025.1"
SCHEMA_VERSION = 1

THEMES = {
    "EC": "economic analysis",
    "POL": "policy",
    "CORE": "core mandate",
    "RE": "real estate",
    "CREDIT": "credit and financial markets",
    "RISK": "risk and confidence",
    "EXT": "external sector",
    "FUN": "fundamentals",
    "SAV": "saving",
    "OTH": "other",
}


def terminal(stance: str, rationale: str) -> dict:
    return {"terminal": {"stance": stance, "rationale": rationale}}


def question(text: str, *answers: tuple[str, dict]) -> dict:
    return {"question": text, "answers": [{"label": label, "next": nxt} for label, nxt in answers]}


def pressure_tree(subject: str) -> dict:
    """Does <subject> add to or ease inflationary pressure?"""
    return question(
        f"Does the paragraph describe {subject} as adding to inflationary pressure, "
        "easing that pressure, or is the effect unclear or not discussed?",
        (
            "adding to inflationary pressure",
            question(
                f"Is the pressure from {subject} described as significant for the policy outlook?",
                (
                    "significant for the outlook",
                    terminal("hawkish", f"{subject} is presented as a significant source of inflationary pressure."),
                ),
                (
                    "modest or contained",
                    terminal("leaning hawkish", f"{subject} adds some inflationary pressure but is described as contained."),
                ),
            ),
        ),
        (
            "easing inflationary pressure",
            question(
                f"Is the easing from {subject} described as significant for the policy outlook?",
                (
                    "significant for the outlook",
                    terminal("dovish", f"{subject} is presented as materially easing inflationary pressure."),
                ),
                (
                    "modest or contained",
                    terminal("leaning dovish", f"{subject} eases inflationary pressure somewhat."),
                ),
            ),
        ),
        (
            "unclear or not discussed",
            terminal("neutral", f"The paragraph draws no clear inflation signal from {subject}."),
        ),
    )


def demand_tree(subject: str) -> dict:
    """Is <subject> strengthening, weakening, or stable?"""
    return question(
        f"Does the paragraph describe {subject} as strengthening, weakening, or broadly stable?",
        (
            "strengthening",
            question(
                f"Is the strength in {subject} linked to capacity pressures or inflation?",
                (
                    "linked to capacity or inflation pressures",
                    terminal("hawkish", f"Strength in {subject} is feeding capacity or price pressures."),
                ),
                (
                    "not linked to price pressures",
                    terminal("leaning hawkish", f"{subject} is firming, which supports demand."),
                ),
            ),
        ),
        (
            "weakening",
            question(
                f"Is the weakness in {subject} described as material for the outlook?",
                (
                    "material for the outlook",
                    terminal("dovish", f"Weakness in {subject} is weighing materially on the outlook."),
                ),
                (
                    "mild or temporary",
                    terminal("leaning dovish", f"{subject} has softened somewhat."),
                ),
            ),
        ),
        (
            "broadly stable",
            terminal("neutral", f"{subject} is described as broadly stable."),
        ),
    )


def risk_tree(subject: str) -> dict:
    """Is <subject> a downside risk, contained, or background?"""
    return question(
        f"Does the paragraph present {subject} as a downside risk to the outlook, "
        "as easing or contained, or as background commentary?",
        (
            "downside risk to the outlook",
            question(
                "Is the risk described as serious enough to warrant a policy response?",
                (
                    "a policy response may be warranted",
                    terminal("dovish", f"{subject} is a downside risk serious enough to bear on policy."),
                ),
                (
                    "a risk noted without policy implications",
                    terminal("leaning dovish", f"{subject} is flagged as a downside risk."),
                ),
            ),
        ),
        (
            "easing or contained",
            terminal("leaning hawkish", f"Receding concern about {subject} removes a reason for accommodative policy."),
        ),
        (
            "background commentary",
            terminal("neutral", f"{subject} is discussed without a clear policy signal."),
        ),
    )


def policy_bias_tree(subject: str) -> dict:
    """Does discussion of <subject> signal a tightening or easing bias?"""
    return question(
        f"Does the discussion of {subject} signal a tightening bias, an easing bias, or no clear bias?",
        (
            "a tightening bias",
            question(
                "Is tightening presented as likely in the near term?",
                ("likely in the near term", terminal("hawkish", "Tightening is flagged as the likely next move.")),
                ("an option kept open", terminal("leaning hawkish", "Tightening is kept on the table without commitment.")),
            ),
        ),
        (
            "an easing bias",
            question(
                "Is easing presented as likely in the near term?",
                ("likely in the near term", terminal("dovish", "Easing is flagged as the likely next move.")),
                ("an option kept open", terminal("leaning dovish", "Easing is kept on the table without commitment.")),
            ),
        ),
        (
            "no clear bias",
            terminal("neutral", "The discussion signals no directional policy bias."),
        ),
    )


def labour_tree(indicator_phrase: str) -> dict:
    return question(
        f"Do {indicator_phrase} point towards tightness, towards slack, or towards balance?",
        (
            "towards tightness",
            question(
                "Is inflation described as a risk alongside the tight labour market?",
                (
                    "inflation risk discussed",
                    terminal("hawkish", "A tight labour market is linked to inflation risk."),
                ),
                (
                    "no inflation risk discussed",
                    terminal("leaning hawkish", "The labour market is tight, which supports wage pressure."),
                ),
            ),
        ),
        (
            "towards slack",
            question(
                "Is the slack described as widening?",
                ("widening", terminal("dovish", "Widening labour market slack points to weakening demand.")),
                ("stabilising", terminal("leaning dovish", "Some labour market slack remains.")),
            ),
        ),
        (
            "towards balance",
            terminal("neutral", "Labour market conditions are described as balanced."),
        ),
    )


# Hand-written trees for the most load-bearing topics.

INFLATION_TREE = question(
    "Is inflation described as a risk, are policymakers willing to tolerate inflationary "
    "pressures, or is there no mention at all?",
    (
        "inflation risk discussed",
        question(
            "Is the inflation pressure described as broadening or persistent?",
            ("broadening or persistent", terminal("hawkish", "Inflation is a live, persistent risk.")),
            ("expected to moderate", terminal("leaning hawkish", "Inflation is a risk but expected to ease.")),
        ),
    ),
    (
        "willing to tolerate inflation pressures",
        terminal("dovish", "Policymakers signal tolerance of inflation pressure, prioritising other goals."),
    ),
    (
        "no mention of inflation",
        terminal("neutral", "Inflation is not discussed."),
    ),
)

TARGET_TREE = question(
    "Is inflation described as above the target range, within it, or below it?",
    (
        "above the target range",
        question(
            "Is inflation expected to return to target within the forecast horizon?",
            ("returning within the horizon", terminal("leaning hawkish", "Inflation is above target but converging.")),
            ("staying above for longer", terminal("hawkish", "Inflation is expected to stay above target.")),
        ),
    ),
    (
        "within the target range",
        terminal("neutral", "Inflation sits within the target range."),
    ),
    (
        "below the target range",
        question(
            "Is inflation expected to return to target within the forecast horizon?",
            ("returning within the horizon", terminal("leaning dovish", "Inflation is below target but converging.")),
            ("staying below for longer", terminal("dovish", "Inflation is expected to stay below target.")),
        ),
    ),
)

EXPECTATIONS_TREE = question(
    "Are inflation expectations described as anchored, drifting higher, or drifting lower?",
    ("anchored", terminal("neutral", "Expectations remain anchored, requiring no policy signal.")),
    ("drifting higher", terminal("hawkish", "De-anchoring expectations to the upside argue for tighter policy.")),
    ("drifting lower", terminal("dovish", "Expectations drifting lower argue for easier policy.")),
)

WAGES_TREE = question(
    "Is wages growth described as above rates consistent with the inflation target, "
    "consistent with it, or below it?",
    (
        "above consistent rates",
        question(
            "Is the strength attributed to weak productivity growth?",
            ("yes, productivity is weak", terminal("hawkish", "Strong wages with weak productivity raise unit labour costs.")),
            ("no, productivity is keeping up", terminal("leaning hawkish", "Wages growth is strong but partly absorbed by productivity.")),
        ),
    ),
    ("consistent with the target", terminal("neutral", "Wages growth is consistent with the inflation target.")),
    ("below consistent rates", terminal("leaning dovish", "Subdued wages growth weighs on inflation.")),
)

CAPACITY_TREE = question(
    "Does the paragraph describe the economy as running up against capacity constraints, "
    "as having spare capacity, or in balance?",
    ("capacity constraints", terminal("hawkish", "Binding capacity constraints generate inflationary pressure.")),
    ("spare capacity", terminal("dovish", "Spare capacity weighs on prices and argues for support.")),
    ("in balance", terminal("neutral", "Demand and supply are described as broadly balanced.")),
)

FORECAST_TREE = question(
    "Are the forecasts described as being revised towards stronger inflation or activity, "
    "towards weaker, or broadly unchanged?",
    (
        "revised stronger",
        terminal("leaning hawkish", "Upward forecast revisions tilt the outlook hawkish."),
    ),
    (
        "revised weaker",
        terminal("leaning dovish", "Downward forecast revisions tilt the outlook dovish."),
    ),
    (
        "broadly unchanged",
        terminal("neutral", "Forecasts are broadly unchanged."),
    ),
)

INDICATOR_TREE = question(
    "Are the indicators described as stronger than expected, weaker than expected, or in line?",
    (
        "stronger than expected",
        terminal("leaning hawkish", "Upside data surprises point to firmer conditions."),
    ),
    (
        "weaker than expected",
        terminal("leaning dovish", "Downside data surprises point to softer conditions."),
    ),
    (
        "in line with expectations",
        terminal("neutral", "The data are in line with expectations."),
    ),
)

CURRENCY_TREE = question(
    "Is the exchange rate described as depreciating, appreciating, or stable?",
    (
        "depreciating",
        question(
            "Is the depreciation linked to imported inflation pressure?",
            ("linked to imported inflation", terminal("hawkish", "Depreciation is adding to imported inflation.")),
            ("no inflation link drawn", terminal("leaning hawkish", "Depreciation supports demand for domestic output.")),
        ),
    ),
    (
        "appreciating",
        terminal("leaning dovish", "Appreciation dampens imported inflation and tradables demand."),
    ),
    (
        "stable",
        terminal("neutral", "The exchange rate is stable or not directional."),
    ),
)

SAVING_TREE = question(
    "Is household saving described as rising, falling, or steady?",
    ("rising", terminal("leaning dovish", "Rising saving withdraws spending from the economy.")),
    ("falling", terminal("leaning hawkish", "Falling saving is funding additional spending.")),
    ("steady", terminal("neutral", "Saving behaviour is steady.")),
)

SUPER_TREE = question(
    "Does the superannuation discussion bear on current household spending capacity?",
    (
        "boosts current spending capacity",
        terminal("leaning hawkish", "Superannuation flows are adding to spendable income."),
    ),
    (
        "locks income away from spending",
        terminal("leaning dovish", "Contributions divert income from current spending."),
    ),
    (
        "no spending implications",
        terminal("neutral", "The discussion has no demand implications."),
    ),
)

GOVERNANCE_TREE = question(
    "Does the governance discussion signal any change to the policy framework's inflation focus?",
    ("a stronger inflation focus", terminal("leaning hawkish", "A sharper inflation mandate tilts hawkish.")),
    ("a weaker inflation focus", terminal("leaning dovish", "A diluted inflation mandate tilts dovish.")),
    ("no change signalled", terminal("neutral", "Governance matters carry no stance signal.")),
)

ORGANISATIONS_TREE = question(
    "Do the international organisation views described tilt towards tighter or looser policy?",
    ("towards tighter policy", terminal("leaning hawkish", "External advice leans towards tightening.")),
    ("towards looser policy", terminal("leaning dovish", "External advice leans towards easing.")),
    ("no policy tilt", terminal("neutral", "The views carry no policy tilt.")),
)


# (mnemonic, name, surface, phrases, tree)
TOPICS: list[tuple[str, str, str, list[str], dict]] = [
    (
        "EC-FORECAST",
        "Forecasting",
        "Forecasting (including Consensus Economics, Scenarios, etc.)",
        ["central forecast", "forecast revisions", "consensus economics", "scenario analysis",
         "outlook for inflation", "forecast horizon"],
        FORECAST_TREE,
    ),
    (
        "EC-INDICATOR",
        "Economic Indicators",
        "Economic Indicators (including Noise, Seasonal Adjustment)",
        ["seasonally adjusted", "partial indicators", "monthly volatility", "survey measures",
         "leading indicators", "data noise"],
        INDICATOR_TREE,
    ),
    (
        "POL-MONETARY",
        "Monetary Policy",
        "Monetary Policy",
        ["monetary policy stance", "policy settings", "cash rate target", "restrictive policy",
         "accommodative policy", "policy normalisation"],
        policy_bias_tree("the monetary policy stance"),
    ),
    (
        "POL-STIMULUS",
        "Economic Stimulus",
        "Economic Stimulus (incl. Government Grants, Incentives, Rebates, Subsidies)",
        ["fiscal stimulus", "government grants", "household rebates", "subsidy programs",
         "income support payments"],
        pressure_tree("the stimulus measures"),
    ),
    (
        "POL-FISCAL",
        "Fiscal Policy",
        "Fiscal Policy (incl. austerity)",
        ["fiscal policy", "fiscal consolidation", "austerity measures", "public spending",
         "budget repair"],
        pressure_tree("the fiscal policy settings"),
    ),
    (
        "POL-GOVBUDGET",
        "Government Budget",
        "Government Budget (Deficits and Surpluses)",
        ["budget deficit", "budget surplus", "fiscal balance", "government borrowing",
         "budget position"],
        pressure_tree("the budget position"),
    ),
    (
        "POL-TAX",
        "Taxation",
        "Taxation",
        ["taxation", "tax cuts", "income tax", "company tax", "tax revenue"],
        pressure_tree("the tax changes"),
    ),
    (
        "POL-LEGISLATIONREGULATION",
        "Legislation and Regulation",
        "Legislation and Regulation",
        ["legislation", "regulatory framework", "new regulations", "compliance costs",
         "law reform"],
        pressure_tree("the regulatory changes"),
    ),
    (
        "CORE-INFLATION",
        "Inflation and Inflationary Pressures",
        "Inflation and Inflationary Pressures",
        ["inflationary pressures", "underlying inflation", "headline inflation",
         "trimmed mean inflation", "price pressures", "disinflation"],
        INFLATION_TREE,
    ),
    (
        "CORE-INFLATIONEXPECTATIONS",
        "Inflation Expectations",
        "Inflation Expectations",
        ["inflation expectations", "expectations remain anchored",
         "long-term inflation expectations", "survey measures of expectations",
         "breakeven inflation"],
        EXPECTATIONS_TREE,
    ),
    (
        "CORE-TARGET",
        "Inflation Target",
        "Inflation Target (2-3 per cent)",
        ["inflation target", "target band", "2-3 per cent", "midpoint of the target range",
         "return inflation to target"],
        TARGET_TREE,
    ),
    (
        "CORE-PRODUCTIVITY",
        "Productivity",
        "Productivity",
        ["productivity growth", "labour productivity", "multifactor productivity",
         "output per hour", "productivity performance"],
        pressure_tree("productivity developments"),
    ),
    (
        "CORE-CAPACITY",
        "Productive Capacity",
        "Productive Capacity (e.g. aggregate demand/supply, capacity)",
        ["spare capacity", "capacity utilisation", "aggregate demand and supply",
         "capacity constraints", "output gap"],
        CAPACITY_TREE,
    ),
    (
        "CORE-LABOUREXTENSIVE",
        "Labour Market, Extensive Margin",
        "Labour Market, Extensive Margin (e.g. Employment, Unemployment, Participation, "
        "Hires and Quits, Layoffs)",
        ["unemployment rate", "employment growth", "participation rate", "job vacancies",
         "hiring intentions", "layoffs"],
        labour_tree("employment, unemployment and participation indicators"),
    ),
    (
        "CORE-LABOURINTENSIVE",
        "Labour Market, Intensive Margin",
        "Labour Market, Intensive Margin (e.g. Hours Worked, Underutilisation, Part vs Full Time)",
        ["hours worked", "underemployment", "part-time employment", "full-time employment",
         "underutilisation rate"],
        labour_tree("hours worked and underutilisation indicators"),
    ),
    (
        "CORE-LABOURCAPACITY",
        "Labour Market Capacity",
        "Labour Market Capacity (e.g. labour market slack or tightness, the NAIRU)",
        ["labour market slack", "labour market tightness", "full employment", "the NAIRU",
         "labour shortages"],
        labour_tree("measures of labour market slack or tightness"),
    ),
    (
        "CORE-SKILLS",
        "Worker Skills and Human Capital",
        "Worker Skills and Human Capital",
        ["skills shortages", "human capital", "worker training", "skilled migration",
         "qualification mismatch"],
        pressure_tree("skills shortages"),
    ),
    (
        "CORE-WAGES",
        "Wages, Salaries, and Employee Compensation",
        "Wages, Salaries, and Employee Compensation (including Enterprise Bargaining)",
        ["wages growth", "wage price index", "enterprise bargaining", "award wages",
         "labour costs", "salary increases"],
        WAGES_TREE,
    ),
    (
        "CORE-ACTIVITY",
        "GDP and Economic Activity",
        "GDP and Economic Activity (e.g. Domestic Demand, National Accounts)",
        ["GDP growth", "economic activity", "domestic demand", "national accounts",
         "output growth", "economic growth"],
        demand_tree("economic activity"),
    ),
    (
        "CORE-SUPPLYSHOCKS",
        "Supply Shocks",
        "Supply Shocks",
        ["supply shock", "supply disruptions", "supply chain pressures", "input shortages",
         "global supply conditions"],
        pressure_tree("the supply disruptions"),
    ),
    (
        "CORE-DEMANDSHOCKS",
        "Demand Shocks",
        "Demand Shocks",
        ["demand shock", "surge in demand", "collapse in demand", "pent-up demand",
         "demand pull"],
        pressure_tree("the demand shock"),
    ),
    (
        "CORE-DISRUPTION",
        "Economic Disruption",
        "Economic Disruption (e.g. trade tensions, COVID-19 pandemic)",
        ["trade tensions", "pandemic", "lockdowns", "economic disruption", "border closures"],
        risk_tree("the economic disruption"),
    ),
    (
        "CORE-BUSACTIVITY",
        "Business Activity",
        "Business Activity (e.g. Profits and Solvency, Inventories)",
        ["business conditions", "corporate profits", "inventories", "business solvency",
         "firm margins"],
        demand_tree("business activity"),
    ),
    (
        "CORE-CYCLES",
        "Economic Cycles",
        "Economic Cycles (Recessions and Expansions)",
        ["recession", "expansion", "economic cycle", "downturn", "recovery phase"],
        risk_tree("recession risk"),
    ),
    (
        "CORE-FINDISRUPTION",
        "Financial Crises",
        "Financial Crises",
        ["financial crisis", "banking crisis", "credit crunch", "financial contagion",
         "systemic stress"],
        risk_tree("financial system stress"),
    ),
    (
        "CORE-HOUSEHOLDINCOMES",
        "Household Incomes and Budgets",
        "Household Incomes and Budgets",
        ["household income", "disposable income", "household budgets", "real incomes",
         "income growth"],
        demand_tree("household income growth"),
    ),
    (
        "CORE-WEALTH",
        "Wealth",
        "Wealth",
        ["household wealth", "net worth", "wealth effects", "asset holdings",
         "wealth distribution"],
        demand_tree("household wealth"),
    ),
    (
        "CORE-COMPETITION",
        "Competition",
        "Competition",
        ["competitive pressures", "market concentration", "pricing power",
         "competition policy", "new entrants"],
        pressure_tree("competitive dynamics"),
    ),
    (
        "CORE-INVESTMENT",
        "Investment and Capital Expenditure",
        "Investment and Capital Expenditure",
        ["business investment", "capital expenditure", "investment intentions",
         "non-mining investment", "machinery and equipment investment"],
        demand_tree("business investment"),
    ),
    (
        "CORE-CONSUMPTION",
        "Consumption",
        "Consumption",
        ["household consumption", "consumer spending", "retail sales",
         "discretionary spending", "spending growth"],
        demand_tree("household consumption"),
    ),
    (
        "CORE-TRADABLENONTRADEABLE",
        "Tradable and Non-Tradable Sectors",
        "Tradable and Non-Tradable Sectors",
        ["tradables inflation", "non-tradables inflation", "tradable sector",
         "non-tradable sector", "imported goods prices"],
        pressure_tree("tradables and non-tradables prices"),
    ),
    (
        "CORE-MANUF",
        "Manufacturing Sector",
        "Manufacturing Sector",
        ["manufacturing sector", "manufacturing output", "factory production",
         "manufacturing employment", "industrial production"],
        demand_tree("manufacturing activity"),
    ),
    (
        "CORE-SERVICES",
        "Services Sector",
        "Services Sector",
        ["services sector", "services inflation", "services exports",
         "household services", "market services"],
        demand_tree("services sector activity"),
    ),
    (
        "CORE-AFFORDABILITY",
        "Affordability and Cost of Living",
        "Affordability and Cost of Living",
        ["cost of living", "affordability", "living costs", "cost pressures on households",
         "price of essentials"],
        pressure_tree("cost-of-living pressures"),
    ),
    (
        "CORE-CAPITALSTOCK",
        "Capital Stock",
        "Capital Stock (incl. infrastructure)",
        ["capital stock", "infrastructure investment", "public infrastructure",
         "capital deepening", "asset replacement"],
        demand_tree("capital formation"),
    ),
    (
        "RE-COMMERCIAL",
        "Commercial Real Estate",
        "Commercial Real Estate",
        ["commercial property", "office vacancy", "retail property",
         "commercial real estate prices", "industrial property"],
        demand_tree("commercial property conditions"),
    ),
    (
        "RE-RESIDENTIAL",
        "Residential Real Estate",
        "Residential Real Estate (e.g. Housing, Rents, Dwelling Construction and Investment)",
        ["housing prices", "housing market", "rents", "dwelling investment",
         "residential property", "rental vacancy"],
        demand_tree("housing market conditions"),
    ),
    (
        "RE-CONSTRUCTION",
        "Building Approvals and Construction",
        "Building Approvals and Construction",
        ["building approvals", "construction activity", "dwelling construction",
         "construction pipeline", "residential building"],
        demand_tree("construction activity"),
    ),
    (
        "CREDIT-INTERESTRATES",
        "Interest Rates",
        "The official cash rate or other interest rates",
        ["cash rate", "interest rates", "mortgage rates", "lending rates", "deposit rates",
         "rate rises"],
        policy_bias_tree("the path of interest rates"),
    ),
    (
        "CREDIT-VOLATILITY",
        "Financial Volatility",
        "Financial volatility",
        ["financial market volatility", "market turbulence", "volatility spikes",
         "risk repricing", "market swings"],
        risk_tree("market volatility"),
    ),
    (
        "CREDIT-BANKING",
        "Banking Sector",
        "Banking Sector (including Resolution and Macroprudential Policies)",
        ["banking system", "bank capital", "macroprudential policy",
         "bank lending standards", "bank resilience"],
        risk_tree("banking sector vulnerabilities"),
    ),
    (
        "CREDIT-CREDITGROWTH",
        "Credit Growth and Allocation",
        "Credit Growth and Allocation",
        ["credit growth", "lending growth", "credit conditions", "loan approvals",
         "credit allocation"],
        demand_tree("credit growth"),
    ),
    (
        "CREDIT-PRICING",
        "Credit and Asset Pricing",
        "Credit and Asset Pricing (e.g. Asset Prices, Yield Curves)",
        ["asset prices", "yield curve", "bond yields", "credit spreads", "risk premia"],
        demand_tree("asset prices"),
    ),
    (
        "CREDIT-EQUITIES",
        "Equities Markets",
        "Equities Markets",
        ["equity markets", "share prices", "stock market", "equity valuations",
         "sharemarket falls"],
        demand_tree("equity markets"),
    ),
    (
        "CREDIT-BONDS",
        "Bond Markets and Securitisation",
        "Bond Markets and Securitisation (e.g. RMBS, ABS)",
        ["bond markets", "securitisation", "RMBS", "corporate bond issuance",
         "government bond yields"],
        demand_tree("bond market conditions"),
    ),
    (
        "CREDIT-HOUSEHOLDDEBT",
        "Household Debt",
        "Household Debt (e.g. Mortgages, Credit Cards)",
        ["household debt", "mortgage borrowing", "credit card debt", "debt servicing",
         "household leverage"],
        demand_tree("household borrowing"),
    ),
    (
        "CREDIT-CORPDEBT",
        "Corporate Debt",
        "Corporate Debt (e.g. Corporate Bonds, Business Loans)",
        ["corporate debt", "business loans", "corporate bonds", "business borrowing",
         "corporate leverage"],
        demand_tree("corporate borrowing"),
    ),
    (
        "CREDIT-GOVTDEBT",
        "Government Debt",
        "Government Debt (e.g. Australian Government Securities, Treasury Bills)",
        ["government debt", "government securities", "treasury bills",
         "sovereign borrowing", "public debt"],
        demand_tree("government borrowing"),
    ),
    (
        "CREDIT-INFRASTRUCTURE",
        "Financial Market Infrastructure",
        "Financial Market Infrastructure (e.g. central counterparties, stock exchanges)",
        ["central counterparties", "payment systems", "clearing and settlement",
         "stock exchanges", "market infrastructure"],
        risk_tree("market infrastructure risks"),
    ),
    (
        "RISK-CONFIDENCE",
        "Consumer and Business Confidence",
        "Consumer and Business Confidence",
        ["consumer confidence", "business confidence", "sentiment surveys",
         "confidence fell", "optimism"],
        demand_tree("consumer and business confidence"),
    ),
    (
        "RISK-FINRISK",
        "Financial Risks",
        "Financial risks (e.g. credit risk, duration risk, risk-on or risk-off sentiment)",
        ["credit risk", "duration risk", "risk appetite", "risk-off sentiment",
         "financial risks"],
        risk_tree("financial risks"),
    ),
    (
        "RISK-GEOPOLITICAL",
        "Geopolitical Risk",
        "Geopolitical risk (e.g. war, terrorist attacks)",
        ["geopolitical tensions", "war", "conflict", "terrorist attacks",
         "geopolitical uncertainty"],
        risk_tree("geopolitical risks"),
    ),
    (
        "RISK-INSURANCE",
        "Insurance",
        "Insurance",
        ["insurance premiums", "insurers", "underwriting", "insurance claims", "reinsurance"],
        pressure_tree("insurance cost developments"),
    ),
    (
        "EXT-CURRENCIES",
        "Currencies",
        "Currencies",
        ["exchange rate", "the Australian dollar", "currency depreciation",
         "currency appreciation", "trade-weighted index"],
        CURRENCY_TREE,
    ),
    (
        "EXT-INTLECON",
        "International Economics and Capital Flows",
        "International Economics and Capital Flows",
        ["global economy", "world growth", "capital flows", "international conditions",
         "global outlook"],
        demand_tree("global growth"),
    ),
    (
        "EXT-TRADE",
        "Trade",
        "Trade (e.g. Imports and Exports)",
        ["exports", "imports", "trade balance", "terms of trade", "trade volumes"],
        demand_tree("trade flows"),
    ),
    (
        "EXT-MINING",
        "Mining and Resources Sector Activity",
        "Mining and Resources Sector Activity",
        ["mining investment", "resources sector", "mining production", "resource projects",
         "mining exports"],
        demand_tree("resources sector activity"),
    ),
    (
        "EXT-COMMODITIES",
        "Oil and Bulk Commodity Markets",
        "Oil and Bulk Commodity Markets (e.g. Oil, Gas, Iron Ore)",
        ["commodity prices", "iron ore prices", "oil prices", "gas prices",
         "bulk commodities"],
        pressure_tree("commodity price movements"),
    ),
    (
        "EXT-AGRICULTURAL",
        "Agricultural Commodities",
        "Agricultural Commodities",
        ["agricultural commodities", "farm output", "wheat prices", "livestock prices",
         "rural exports"],
        pressure_tree("agricultural price movements"),
    ),
    (
        "EXT-INTLMONETARYPOLICY",
        "International Monetary Policy Comparisons",
        "International Monetary Policy Comparisons",
        ["other central banks", "federal reserve", "global policy rates",
         "international monetary policy", "policy abroad"],
        policy_bias_tree("policy settings abroad"),
    ),
    (
        "FUN-DEMOGRAPHICS",
        "Demographics and Population",
        "Demographics and Population (including International Students and Migration)",
        ["population growth", "migration", "international students", "ageing population",
         "demographic trends"],
        pressure_tree("population growth"),
    ),
    (
        "FUN-CLIMATE",
        "Weather Events and Environmental Policies",
        "Weather Events and Environmental Policies",
        ["weather events", "drought", "floods", "climate policies", "natural disasters"],
        pressure_tree("weather-related supply disruptions"),
    ),
    (
        "SAV-SAVING",
        "Saving",
        "Saving",
        ["household saving", "saving ratio", "precautionary saving", "savings buffers",
         "saving behaviour"],
        SAVING_TREE,
    ),
    (
        "SAV-SUPER",
        "Superannuation Schemes",
        "Superannuation Schemes",
        ["superannuation", "super funds", "retirement savings",
         "superannuation guarantee", "pension assets"],
        SUPER_TREE,
    ),
    (
        "OTH-CBGOVERNANCE",
        "Central Bank Governance",
        "Central Bank Governance",
        ["board meeting", "central bank governance", "monetary policy board",
         "bank's mandate", "review of the bank"],
        GOVERNANCE_TREE,
    ),
    (
        "OTH-ORGANISATIONS",
        "International Organisations",
        "International Organisations (e.g. IMF, Chinese Communist Party, ASEAN)",
        ["IMF", "world bank", "OECD", "international organisations", "G20"],
        ORGANISATIONS_TREE,
    ),
]


def build() -> dict:
    topics = []
    for mnemonic, name, surface, phrases, tree in TOPICS:
        theme_key = mnemonic.split("-", 1)[0]
        topics.append(
            {
                "mnemonic": mnemonic,
                "name": name,
                "theme": THEMES[theme_key],
                "surface": surface,
                "phrases": phrases,
                "tree": tree,
            }
        )
    return {"schema_version": SCHEMA_VERSION, "version": VERSION, "topics": topics}


def main() -> int:
    doc = build()
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    try:
        from hawkdove.taxonomy import load_taxonomy

        taxonomy = load_taxonomy(OUT_PATH.read_bytes())
        print(f"wrote {OUT_PATH} ({len(taxonomy.topics)} topics, valid)")
    except ImportError:
        print(f"wrote {OUT_PATH} (install the package to validate)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
