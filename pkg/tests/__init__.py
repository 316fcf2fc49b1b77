# AxiReg Lab tests
