"""
Tek giriş: Proje kökünde Streamlit uygulaması
"""
import logging

import streamlit as st

from designlab.modules import bipartite, codes, oracles, quadruples, squares


logging.basicConfig(level=logging.INFO)

st.set_page_config(page_title="designlab", layout="wide")

st.sidebar.title("designlab")
st.sidebar.caption("MDS kodlar, latin kareler ve blok tasarımlar")

MODULLER = {
	"Latin Kareler": squares,
	"MDS Kodlar": codes,
	"3-BBD Tasarımları": bipartite,
	"Steiner Dörtlüleri": quadruples,
	"Sayımlar": oracles,
}

secim = st.sidebar.radio("Modüller", list(MODULLER.keys()))
sayfa = MODULLER[secim]
sayfa.render()

st.sidebar.info("Her yapı üretildikten sonra bağımsız bir doğrulayıcıyla kontrol edilir.")
