import json, collections
def emit(path, variables):
    names=[v["name"] for v in variables]
    assert len(names)==len(set(names)), path
    with open(path,"w") as f:
        json.dump({"variables":variables}, f, indent=2); f.write("\n")
    print(path, len(variables))

def var(name, kind, deps=(), inflows=(), outflows=()):
    v={"name":name,"kind":kind,"depends_on":list(deps)}
    if inflows: v["inflows"]=list(inflows)
    if outflows: v["outflows"]=list(outflows)
    return v

# ---- World2 ----
w=[]
w+= [var("P","stock",["PI"],["BR"],["DR"]),
     var("NR","stock",["NRI"],[],["NRUR"]),
     var("CI","stock",["CII"],["CIG"],["CID"]),
     var("POL","stock",["POLI"],["POLG"],["POLA"]),
     var("CIAF","stock",["CIAFI"],["CIAFCH"],[])]
w+= [var("BR","flow",["P","BRN","BRN1","SWT1","BRFM","BRMM","BRCM","BRPM"]),
     var("DR","flow",["P","DRN","DRN1","SWT3","DRMM","DRPM","DRFM","DRCM"]),
     var("NRUR","flow",["P","NRUN","NRUN1","SWT2","NRMM"]),
     var("CIG","flow",["P","CIM","CIGN","CIGN1","SWT4"]),
     var("CID","flow",["CI","CIDN","CIDN1","SWT5"]),
     var("POLG","flow",["P","POLN","POLN1","SWT6","POLCM"]),
     var("POLA","flow",["POL","POLAT"]),
     var("CIAFCH","flow",["CFIFR","CIQR","CIAF","CIAFT"])]
computed = [
 ("CR",["P","LA","PDN"]),
 ("MSL",["ECIR","ECIRN"]),
 ("ECIR",["CIR","CIAF","NREM","CIAFN"]),
 ("CIR",["CI","P"]),
 ("NRFR",["NR","NRI"]),
 ("FR",["FPCI","FCM","FPM","FC","FC1","SWT7","FN"]),
 ("CIRA",["CIR","CIAF","CIAFN"]),
 ("POLR",["POL","POLS"]),
 ("QL",["QLS","QLM","QLC","QLF","QLP"]),
]
tabled = [("NREM","NRFR"),("BRMM","MSL"),("DRMM","MSL"),("DRPM","POLR"),("DRFM","FR"),("DRCM","CR"),
 ("BRCM","CR"),("BRFM","FR"),("BRPM","POLR"),("FPCI","CIRA"),("FCM","CR"),("FPM","POLR"),("POLAT","POLR"),
 ("POLCM","CIR"),("CIM","MSL"),("CFIFR","FR"),("CIQR",None),("QLM","MSL"),("QLC","CR"),("QLF","FR"),
 ("QLP","POLR"),("NRMM","MSL")]
for n,d in computed: w.append(var(n,"auxiliary",d))
for n,src in tabled:
    deps=[n+"T"] + (["QLM","QLF"] if src is None else [src])
    w.append(var(n,"auxiliary",deps))
for n,_ in tabled: w.append(var(n+"T","auxiliary"))
consts="BRN BRN1 SWT1 DRN DRN1 SWT3 NRUN NRUN1 SWT2 CIGN CIGN1 SWT4 CIDN CIDN1 SWT5 POLN POLN1 SWT6 LA PDN ECIRN CIAFN FC FC1 SWT7 FN POLS CIAFT QLS NRI".split()
assert len(consts)==30
for c in consts: w.append(var(c,"auxiliary"))
for c in "PI CII POLI CIAFI".split(): w.append(var(c,"auxiliary"))
emit("fixtures/world2.json", w)

# ---- Market growth ----
m=[var("salesmen","stock",["salesmen_initial"],["salesmen_hiring"]),
   var("backlog","stock",["backlog_initial"],["orders_booked"],["order_completion"]),
   var("delivery_delay_recognized","stock",["delivery_delay_indicated"],["ddr_change"]),
   var("capacity_on_order","stock",[],["capacity_ordering"],["capacity_arrival"]),
   var("production_capacity","stock",["capacity_initial"],["capacity_arrival"]),
   var("delivery_delay_perceived","stock",["delivery_delay_recognized"],["ddm_change"]),
   var("salesmen_hiring","flow",["indicated_salesmen","salesmen","salesman_adjustment_time"]),
   var("orders_booked","flow",["salesmen","salesman_effectiveness"]),
   var("order_completion","flow",["production_capacity","capacity_utilization"]),
   var("ddr_change","flow",["delivery_delay_indicated","delivery_delay_recognized","recognition_delay"]),
   var("capacity_ordering","flow",["production_capacity","capacity_expansion_fraction"]),
   var("capacity_arrival","flow",["capacity_on_order","capacity_acquisition_delay"]),
   var("ddm_change","flow",["delivery_delay_recognized","delivery_delay_perceived","market_perception_delay"]),
   var("indicated_salesmen","auxiliary",["budget","salesman_salary"]),
   var("salesman_adjustment_time","auxiliary"),
   var("budget","auxiliary",["revenue","fraction_revenue_to_sales"]),
   var("salesman_salary","auxiliary"),
   var("revenue","auxiliary",["order_completion","revenue_per_unit"]),
   var("fraction_revenue_to_sales","auxiliary"),
   var("revenue_per_unit","auxiliary"),
   var("salesman_effectiveness","auxiliary",["effectiveness_multiplier_from_delay","max_effectiveness"]),
   var("effectiveness_multiplier_from_delay","auxiliary",["delivery_delay_perceived","effectiveness_table"]),
   var("max_effectiveness","auxiliary"),
   var("effectiveness_table","auxiliary"),
   var("market_perception_delay","auxiliary"),
   var("capacity_utilization","auxiliary",["delivery_delay_indicated","normal_delivery_delay","utilization_table"]),
   var("delivery_delay_indicated","auxiliary",["backlog","order_completion"]),
   var("normal_delivery_delay","auxiliary"),
   var("utilization_table","auxiliary"),
   var("recognition_delay","auxiliary"),
   var("capacity_expansion_fraction","auxiliary",["delivery_delay_condition","expansion_table"]),
   var("expansion_table","auxiliary"),
   var("delivery_delay_condition","auxiliary",["delivery_delay_recognized","delivery_delay_operating_goal"]),
   var("delivery_delay_operating_goal","auxiliary",["delivery_delay_minimum","delivery_delay_bias","delivery_delay_tradition","weight_of_tradition"]),
   var("delivery_delay_minimum","auxiliary"),
   var("delivery_delay_bias","auxiliary"),
   var("delivery_delay_tradition","auxiliary",["delivery_delay_recognized"]),
   var("weight_of_tradition","auxiliary"),
   var("capacity_acquisition_delay","auxiliary"),
   var("salesmen_initial","auxiliary"),
   var("backlog_initial","auxiliary"),
   var("capacity_initial","auxiliary")]
emit("fixtures/market_growth.json", m)

emit("fixtures/population.json", [
  var("Population","stock",["initial_population"],["births"],["deaths"]),
  var("births","flow",["Population","birth_rate"]),
  var("deaths","flow",["Population","life_expectancy"]),
  var("birth_rate","auxiliary",["crowding"]),
  var("crowding","auxiliary",["Population","area"]),
  var("life_expectancy","auxiliary",["crowding"]),
  var("area","auxiliary"),
  var("initial_population","auxiliary")])

emit("fixtures/linear_chain.json", [
  var("S1","stock",[],[],["f12"]),
  var("S2","stock",[],["f12"],["f23"]),
  var("S3","stock",[],["f23"]),
  var("f12","flow",["S1","rate"]),
  var("f23","flow",["S2","rate"]),
  var("rate","auxiliary",["S3"])])

emit("fixtures/branching_chain.json", [
  var("inventory","stock",[],["production"],["shipments_east","shipments_west"]),
  var("east_stock","stock",[],["shipments_east"],["east_sales"]),
  var("west_stock","stock",[],["shipments_west"],["west_sales"]),
  var("production","flow",["target_inventory","inventory"]),
  var("shipments_east","flow",["inventory","east_demand"]),
  var("shipments_west","flow",["inventory","west_demand"]),
  var("east_sales","flow",["east_stock","east_demand"]),
  var("west_sales","flow",["west_stock","west_demand"]),
  var("east_demand","auxiliary",["west_stock"]),
  var("west_demand","auxiliary",["east_stock"]),
  var("target_inventory","auxiliary",["east_demand","west_demand"]),
  var("spare_part","flow",["production"])])
